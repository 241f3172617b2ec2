#pragma once

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dnls/config.hpp"

namespace dnls {

inline constexpr const char* kToolVersion = "1.0.0";

/// Header block that opens every artifact:
///   # dnls artifact v1
///   # tool: dnls <version>
///   # seed: <seed>
///   # config: key = value        (one line per key, see RunConfig::echo)
/// The block is itself a valid configuration file.
std::string artifact_header(const RunConfig& cfg);

/// Writes `content` to a temporary file next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Artifacts of one run, buffered in memory and written only by commit(), so a failing run
/// leaves no partial files behind.
class ArtifactSet {
 public:
  ArtifactSet(std::filesystem::path dir, std::string header);

  /// Stream for the named artifact, with the header already written.
  std::ostringstream& open(const std::string& name);
  std::vector<std::string> names() const;
  /// Creates the directory if needed and writes every artifact atomically.
  void commit();

 private:
  std::filesystem::path dir_;
  std::string header_;
  std::map<std::string, std::ostringstream> files_;
};

/// One-line JSON record for a failed run.
std::string error_record(const std::string& command, const std::string& kind, int exit_code,
                         const std::string& message, const std::string& diagnostics = {});

}  // namespace dnls

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

/// A documented configuration key with its default (as text).
struct ConfigKey {
  std::string name;
  std::string fallback;
  std::string doc;
};

enum class ConfigSource { Default, File, Flag };

/// Run configuration: a fixed set of keys holding text values, with typed accessors.
/// Files are line-oriented `key = value` with `#` comments; artifact files written by the tool
/// are accepted too, in which case only their `# config:` header lines are read.
class RunConfig {
 public:
  RunConfig();

  static const std::vector<ConfigKey>& keys();
  static bool known(const std::string& key);

  /// Throws InvalidArgument naming the key when it is unknown.
  void set(const std::string& key, const std::string& value, ConfigSource src);
  void load_text(std::string_view text, const std::string& origin);
  void load_file(const std::string& path);

  const std::string& get(const std::string& key) const;
  ConfigSource source(const std::string& key) const;
  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t seed() const;
  std::vector<double> numbers(const std::string& key) const;   // comma-separated list
  std::vector<long long> integers(const std::string& key) const;

  /// Checks every value against the preconditions of the modules the command uses.
  /// The message names the parameter and the violated bound.
  void validate() const;

  /// `key = value` lines in key order; values set by a flag carry a trailing `# flag`.
  std::string echo() const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, ConfigSource> sources_;
};

}  // namespace dnls

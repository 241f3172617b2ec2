#include "dnls/report.hpp"

#include <fstream>
#include <json.hpp>

#include "dnls/errors.hpp"

namespace dnls {

std::string artifact_header(const RunConfig& cfg) {
  std::string h = "# dnls artifact v1\n";
  h += std::string("# tool: dnls ") + kToolVersion + '\n';
  h += "# seed: " + std::to_string(cfg.seed()) + '\n';
  std::istringstream echo(cfg.echo());
  for (std::string line; std::getline(echo, line);) h += "# config: " + line + '\n';
  return h;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw NumericError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw NumericError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw NumericError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

ArtifactSet::ArtifactSet(std::filesystem::path dir, std::string header)
    : dir_(std::move(dir)), header_(std::move(header)) {}

std::ostringstream& ArtifactSet::open(const std::string& name) {
  auto [it, fresh] = files_.try_emplace(name);
  if (fresh) {
    it->second.precision(17);
    it->second << header_;
  }
  return it->second;
}

std::vector<std::string> ArtifactSet::names() const {
  std::vector<std::string> n;
  for (const auto& [k, v] : files_) n.push_back(k);
  return n;
}

void ArtifactSet::commit() {
  std::filesystem::create_directories(dir_);
  for (const auto& [name, body] : files_) write_atomic(dir_ / name, body.str());
}

std::string error_record(const std::string& command, const std::string& kind, int exit_code,
                         const std::string& message, const std::string& diagnostics) {
  nlohmann::ordered_json j;
  j["status"] = "error";
  j["command"] = command;
  j["kind"] = kind;
  j["exit_code"] = exit_code;
  j["message"] = message;
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  return j.dump();
}

}  // namespace dnls

#include "dnls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dnls/norms.hpp"
#include "dnls/solver.hpp"

namespace dnls {

namespace {

const char* const kCommands[] = {"simulate", "gauge-check", "norms",  "classify",
                                 "kernels",  "fixpoint",    "divisors", "probe"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void reject(const std::string& key, const std::string& value, const std::string& bound) {
  throw InvalidArgument("config: " + key + " = " + value + " violates " + bound);
}

}  // namespace

const std::vector<ConfigKey>& RunConfig::keys() {
  static const std::vector<ConfigKey> k{
      {"command", "", "subcommand to run"},
      {"n_max", "32", "Fourier band |k| <= n_max"},
      {"dt", "0.001", "time step"},
      {"T", "1", "final time (simulate, gauge-check) or localization time (fixpoint)"},
      {"save_every", "10", "keep every save_every-th integrator step"},
      {"p0", "4", "base Fourier-Lebesgue exponent of the parameter ladder"},
      {"delta", "0.01", "ladder gap, 0 < delta < 1/(6 p0)"},
      {"A", "1", "ladder base radius"},
      {"lambda_extent", "4096", "half-width of the modulation grid"},
      {"lambda_step", "0.25", "spacing of the modulation grid"},
      {"seed", "20240917", "master seed of all random streams"},
      {"out", ".", "output directory"},
      {"multiplier", "unit", "unit, or a multiplier table file"},
      {"preset", "plane-wave", "simulate initial data: plane-wave or random"},
      {"wave_amplitude", "0.5", "plane-wave amplitude"},
      {"wave_k", "1", "plane-wave mode"},
      {"amplitude", "0.1", "sup norm of random smooth data"},
      {"corpus_index", "0", "index of the random data set within the seeded corpus"},
      {"field", "", "field file for the norms command (empty: random data)"},
      {"K", "64", "frequency bound of the exhaustive class check"},
      {"chain_K", "24", "frequency bound of the chained-pair check (0 skips it)"},
      {"deltas", "8,32,80", "resonance factors of the kernel tables"},
      {"epsilon", "0.001", "data size of the fixed-point run"},
      {"tol", "1e-12", "fixed-point tolerance"},
      {"max_iter", "30", "fixed-point iteration cap"},
      {"steps_per_T", "64", "time steps per T on the fixed-point grid"},
      {"shells", "128,256,512,1024,2048,4096", "dyadic shells N of the divisor experiments"},
      {"patterns", "-++,++-,+++", "sign patterns of the divisor experiments"},
      {"systems", "2000", "random systems per (shell, pattern) in the divisor experiments"},
      {"samples", "24", "probe samples per (p, n_max) cell"},
      {"estimate", "trilinear", "probe estimate: trilinear, EY_N or EY_L"},
      {"p_values", "1,2,3,4", "trilinear probe exponents p"},
      {"n_values", "16,32,64", "probe bands n_max"},
  };
  return k;
}

bool RunConfig::known(const std::string& key) {
  const auto& k = keys();
  return std::any_of(k.begin(), k.end(), [&](const ConfigKey& c) { return c.name == key; });
}

RunConfig::RunConfig() {
  for (const auto& k : keys()) {
    values_[k.name] = k.fallback;
    sources_[k.name] = ConfigSource::Default;
  }
}

void RunConfig::set(const std::string& key, const std::string& value, ConfigSource src) {
  if (!known(key)) throw InvalidArgument("config: unknown key '" + key + "'");
  values_[key] = value;
  sources_[key] = src;
}

void RunConfig::load_text(std::string_view text, const std::string& origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool artifact = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("# dnls artifact", 0) == 0) artifact = true;
    std::string body;
    if (artifact) {
      if (line.rfind("# config: ", 0) == 0)
        body = line.substr(10);
      else if (!line.empty() && line[0] == '#')
        continue;
      else
        break;  // end of the header
    } else {
      body = line;
    }
    // In an artifact header a trailing "# flag" restores the provenance recorded by echo().
    ConfigSource src = ConfigSource::File;
    const auto hash = body.find('#');
    if (hash != std::string::npos) {
      if (artifact && trim(std::string_view(body).substr(hash + 1)) == "flag") src = ConfigSource::Flag;
      body.erase(hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config: " + origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!known(key))
      throw InvalidArgument("config: " + origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    set(key, value, src);
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  load_text(ss.str(), path);
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("config: unknown key '" + key + "'");
  return it->second;
}

ConfigSource RunConfig::source(const std::string& key) const {
  get(key);
  return sources_.at(key);
}

double RunConfig::number(const std::string& key) const {
  const std::string& v = get(key);
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  reject(key, v, "expected a number");
}

long long RunConfig::integer(const std::string& key) const {
  const std::string& v = get(key);
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) reject(key, v, "expected an integer");
  return x;
}

std::uint64_t RunConfig::seed() const {
  const std::string& v = get("seed");
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) reject("seed", v, "expected an unsigned integer");
  return x;
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(get(key))) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(s, &pos));
      if (pos != s.size()) reject(key, get(key), "expected a comma-separated list of numbers");
    } catch (const std::logic_error&) {
      reject(key, get(key), "expected a comma-separated list of numbers");
    }
  }
  if (out.empty()) reject(key, get(key), "expected a non-empty list");
  return out;
}

std::vector<long long> RunConfig::integers(const std::string& key) const {
  std::vector<long long> out;
  for (const auto& s : split_list(get(key))) {
    long long x = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size())
      reject(key, get(key), "expected a comma-separated list of integers");
    out.push_back(x);
  }
  if (out.empty()) reject(key, get(key), "expected a non-empty list");
  return out;
}

void RunConfig::validate() const {
  const std::string& cmd = get("command");
  if (std::find(std::begin(kCommands), std::end(kCommands), cmd) == std::end(kCommands))
    reject("command", cmd, "one of simulate, gauge-check, norms, classify, kernels, fixpoint, divisors, probe");

  try {
    ladder(number("p0"), number("delta"), number("A"));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  seed();

  const long long n = integer("n_max");
  if (n < 1 || n > 4096) reject("n_max", get("n_max"), "1 <= n_max <= 4096");
  if (!(number("lambda_extent") > 0.0)) reject("lambda_extent", get("lambda_extent"), "lambda_extent > 0");
  if (!(number("lambda_step") > 0.0)) reject("lambda_step", get("lambda_step"), "lambda_step > 0");

  const std::string& m = get("multiplier");
  if (m != "unit" && !std::filesystem::exists(m)) reject("multiplier", m, "'unit' or an existing file");

  if (cmd == "simulate" || cmd == "gauge-check") {
    IntegratorConfig ic;
    ic.n_max = int(n);
    ic.dt = number("dt");
    ic.T = number("T");
    ic.save_every = int(integer("save_every"));
    try {
      ic.validate();
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(std::string("config: ") + e.what());
    }
    const std::string& preset = get("preset");
    if (preset != "plane-wave" && preset != "random") reject("preset", preset, "plane-wave or random");
    if (std::abs(integer("wave_k")) > n) reject("wave_k", get("wave_k"), "|wave_k| <= n_max");
  }
  if (!(number("amplitude") > 0.0)) reject("amplitude", get("amplitude"), "amplitude > 0");
  if (integer("corpus_index") < 0) reject("corpus_index", get("corpus_index"), "corpus_index >= 0");

  if (cmd == "classify") {
    const long long K = integer("K"), C = integer("chain_K");
    if (K < 1 || K > 512) reject("K", get("K"), "1 <= K <= 512");
    if (C < 0 || C > 96) reject("chain_K", get("chain_K"), "0 <= chain_K <= 96");
  }
  if (cmd == "kernels")
    for (double d : numbers("deltas"))
      if (!(d != 0.0) || !std::isfinite(d)) reject("deltas", get("deltas"), "finite nonzero resonance factors");
  if (cmd == "fixpoint") {
    const double T = number("T");
    if (!(T > 0.0) || T > 1.0) reject("T", get("T"), "0 < T <= 1 for fixpoint");
    if (!(number("epsilon") > 0.0)) reject("epsilon", get("epsilon"), "epsilon > 0");
    if (!(number("tol") > 0.0)) reject("tol", get("tol"), "tol > 0");
    if (integer("max_iter") < 1) reject("max_iter", get("max_iter"), "max_iter >= 1");
    if (integer("steps_per_T") < 2) reject("steps_per_T", get("steps_per_T"), "steps_per_T >= 2");
  }
  if (cmd == "divisors") {
    const auto shells = integers("shells");
    if (shells.size() < 4) reject("shells", get("shells"), "at least four shells for the growth fit");
    for (long long N : shells)
      if (N < 1 || N > (1LL << 20)) reject("shells", get("shells"), "1 <= N <= 2^20");
    for (const auto& p : split_list(get("patterns")))
      if (p.size() != 3 || p.find_first_not_of("+-") != std::string::npos)
        reject("patterns", get("patterns"), "three-character patterns of '+' and '-'");
  }
  if (cmd == "divisors" && integer("systems") < 1) reject("systems", get("systems"), "systems >= 1");
  if (cmd == "probe" && integer("samples") < 1) reject("samples", get("samples"), "samples >= 1");
  if (cmd == "probe") {
    const std::string& e = get("estimate");
    if (e != "trilinear" && e != "EY_N" && e != "EY_L") reject("estimate", e, "trilinear, EY_N or EY_L");
    for (long long v : integers("n_values"))
      if (v < 2 || v > 512) reject("n_values", get("n_values"), "2 <= n_max <= 512");
    for (double p : numbers("p_values"))
      if (!(p >= 1.0)) reject("p_values", get("p_values"), "p >= 1");
  }
}

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& k : keys()) {
    out += k.name + " = " + values_.at(k.name);
    if (sources_.at(k.name) == ConfigSource::Flag) out += "  # flag";
    out += '\n';
  }
  return out;
}

}  // namespace dnls

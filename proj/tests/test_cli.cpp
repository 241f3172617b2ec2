#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dnls/cli.hpp"
#include "dnls/config.hpp"
#include "dnls/report.hpp"

using namespace dnls;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("dnls_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "dnls");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string data_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') kept += line + '\n';
  return kept;
}

}  // namespace

TEST_CASE("configuration keys, validation and echo") {
  RunConfig c;
  CHECK_THROWS_WITH_AS(c.set("no_such_key", "1", ConfigSource::File), doctest::Contains("no_such_key"), InvalidArgument);

  c.set("command", "simulate", ConfigSource::Flag);
  c.set("p0", "4", ConfigSource::File);
  c.set("delta", "0.2", ConfigSource::Flag);
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("delta"), InvalidArgument);
  c.set("delta", "0.01", ConfigSource::Flag);
  CHECK_NOTHROW(c.validate());

  const std::string echo = c.echo();
  CHECK(echo.find("delta = 0.01  # flag") != std::string::npos);
  CHECK(echo.find("p0 = 4\n") != std::string::npos);
  CHECK(c.source("n_max") == ConfigSource::Default);

  RunConfig d;
  d.load_text("# comment\nn_max = 12\ndeltas = 8, 32\n", "inline");
  CHECK(d.integer("n_max") == 12);
  CHECK(d.numbers("deltas") == std::vector<double>{8.0, 32.0});
  CHECK(d.source("n_max") == ConfigSource::File);
}

TEST_CASE("artifact headers are valid configuration files") {
  RunConfig c;
  c.set("n_max", "24", ConfigSource::Flag);
  c.set("seed", "5", ConfigSource::File);
  const std::string h = artifact_header(c);
  CHECK(h.rfind("# dnls artifact v1\n", 0) == 0);
  CHECK(h.find("# seed: 5\n") != std::string::npos);
  RunConfig back;
  back.load_text(h + "t,mass\n0,1\n", "artifact");
  CHECK(back.integer("n_max") == 24);
  CHECK(back.seed() == 5);
}

TEST_CASE("atomic writes and buffered artifact sets") {
  TempDir tmp("artifacts");
  write_atomic(tmp.path / "a.txt", "first");
  write_atomic(tmp.path / "a.txt", "second");
  CHECK(slurp(tmp.path / "a.txt") == "second");

  ArtifactSet set(tmp.path / "sub", "# head\n");
  set.open("x.csv") << "1,2\n";
  set.open("y.csv") << "3\n";
  CHECK_FALSE(fs::exists(tmp.path / "sub"));
  set.commit();
  CHECK(slurp(tmp.path / "sub" / "x.csv") == "# head\n1,2\n");
  CHECK(set.names() == std::vector<std::string>{"x.csv", "y.csv"});
  for (const auto& e : fs::directory_iterator(tmp.path / "sub"))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("error records are one-line JSON") {
  const std::string r = error_record("simulate", "numeric", 3, "bad \"value\"", "t=0");
  CHECK(r.find('\n') == std::string::npos);
  CHECK(r.find("\"exit_code\":3") != std::string::npos);
  CHECK(r.find("\\\"value\\\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir tmp("exit");
  const std::string out = (tmp.path / "o").string();

  const CliResult ok = run({"simulate", "--n-max", "8", "--dt", "0.01", "--T", "0.5", "--out", out});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("\"status\":\"ok\"") != std::string::npos);
  CHECK(fs::exists(tmp.path / "o" / "simulate.csv"));

  const CliResult unknown = run({"simulate", "--set", "bogus=1", "--out", out});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("bogus") != std::string::npos);

  const CliResult ladder = run({"simulate", "--delta", "0.2", "--out", out});
  CHECK(ladder.code == kExitUsage);
  CHECK(ladder.err.find("delta") != std::string::npos);

  const std::string bad = (tmp.path / "bad").string();
  const CliResult assertion = run({"simulate", "--n-max", "4", "--dt", "0.125", "--T", "5", "--set", "save_every=8",
                                   "--set", "wave_amplitude=1", "--set", "wave_k=3", "--out", bad});
  CHECK(assertion.code == kExitAssertion);
  CHECK(assertion.err.find("\"kind\":\"assertion\"") != std::string::npos);

  const std::string blow = (tmp.path / "blow").string();
  const CliResult numeric = run({"simulate", "--n-max", "4", "--dt", "0.125", "--T", "5", "--set", "save_every=8",
                                 "--set", "wave_amplitude=3", "--set", "wave_k=3", "--out", blow});
  CHECK(numeric.code == kExitNumeric);
  CHECK(numeric.err.find("blow-up") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "blow"));

  const CliResult diverge = run({"fixpoint", "--set", "epsilon=1", "--n-max", "16", "--T", "0.5", "--out", blow});
  CHECK(diverge.code == kExitNumeric);
  CHECK(diverge.err.find("divergence") != std::string::npos);
}

TEST_CASE("runs are byte-reproducible and can be replayed from an artifact") {
  TempDir tmp("repro");
  const std::vector<std::string> base = {"simulate", "--set", "preset=random", "--n-max", "16", "--dt", "0.005",
                                         "--T", "0.2", "--seed", "11"};
  auto with_out = [&](const std::string& dir) {
    auto a = base;
    a.push_back("--out");
    a.push_back((tmp.path / dir).string());
    return a;
  };
  REQUIRE(run(with_out("a")).code == kExitOk);
  // Same output directory name in a different parent, so headers match byte for byte.
  TempDir other("repro2");
  auto b = base;
  b.push_back("--out");
  b.push_back((tmp.path / "a").string());
  fs::rename(tmp.path / "a", other.path / "a");
  REQUIRE(run(b).code == kExitOk);
  for (const char* f : {"simulate.csv", "simulate_final.field"})
    CHECK(slurp(tmp.path / "a" / f) == slurp(other.path / "a" / f));

  const std::string artifact = (tmp.path / "a" / "simulate.csv").string();
  const CliResult replay = run({"simulate", "--config", artifact, "--out", (tmp.path / "c").string()});
  REQUIRE(replay.code == kExitOk);
  const std::string replayed = slurp(tmp.path / "c" / "simulate.csv");
  CHECK(data_lines(replayed) == data_lines(slurp(artifact)));
  // Provenance recorded in the artifact survives the replay.
  CHECK(replayed.find("# config: seed = 11  # flag\n") != std::string::npos);
}

TEST_CASE("usage errors from the argument parser") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

#include "dnls/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "dnls/combinatorics.hpp"
#include "dnls/config.hpp"
#include "dnls/gauge.hpp"
#include "dnls/kernels.hpp"
#include "dnls/norms.hpp"
#include "dnls/number_theory.hpp"
#include "dnls/paracontrolled.hpp"
#include "dnls/probes.hpp"
#include "dnls/random.hpp"
#include "dnls/report.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectral.hpp"
#include "parallel.hpp"

namespace dnls {

namespace {

using Json = nlohmann::ordered_json;

// State of one subcommand.  Failed checks are collected; the artifacts are still written.
struct Run {
  const RunConfig& cfg;
  ArtifactSet& files;
  Json summary;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

IntegratorConfig integrator(const RunConfig& c) {
  IntegratorConfig ic;
  ic.n_max = int(c.integer("n_max"));
  ic.dt = c.number("dt");
  ic.T = c.number("T");
  ic.save_every = int(c.integer("save_every"));
  return ic;
}

SpectralField random_data(const RunConfig& c, double amplitude) {
  return corpus_field(c.seed(), int(c.integer("corpus_index")), int(c.integer("n_max")), amplitude);
}

double l2(const SpectralField& f) { return f.modes().norm(); }

void cmd_simulate(Run& r) {
  const RunConfig& c = r.cfg;
  const IntegratorConfig ic = integrator(c);
  const double p0 = c.number("p0");
  const bool wave = c.get("preset") == "plane-wave";
  const cplx a(c.number("wave_amplitude"), 0.0);
  const int k = int(c.integer("wave_k"));
  const SpectralField u0 = wave ? exact_plane_wave(a, k, 0.0, ic.n_max) : random_data(c, c.number("amplitude"));
  const SpaceTimeField U = integrate_dnls(u0, ic);

  auto& csv = r.files.open("simulate.csv");
  csv << "t,mass,l2,h_half_p0\n";
  const double m0 = mass(u0);
  double max_err = 0.0, drift = 0.0;
  for (Index j = 0; j < U.time.n; ++j) {
    const SpectralField s = U.slice(j);
    const double m = mass(s);
    csv << U.time[j] << ',' << m << ',' << std::sqrt(m) << ',' << fl_norm(s, 0.5, p0) << '\n';
    if (m0 > 0.0) drift = std::max(drift, std::abs(m - m0) / m0);
    if (wave) max_err = std::max(max_err, (s - exact_plane_wave(a, k, U.time[j], ic.n_max)).modes().cwiseAbs().maxCoeff());
  }
  auto& field = r.files.open("simulate_final.field");
  write_field(field, U.slice(U.time.n - 1));

  r.summary["slices"] = U.time.n;
  r.summary["mass_drift"] = drift;
  if (wave) {
    r.summary["max_mode_error"] = max_err;
    r.check(max_err <= 1e-6, "plane-wave max mode error " + std::to_string(max_err) + " > 1e-6");
  }
}

void cmd_gauge_check(Run& r) {
  const RunConfig& c = r.cfg;
  const IntegratorConfig ic = integrator(c);
  const SpectralField u0 = random_data(c, c.number("amplitude"));
  const SpaceTimeField U = integrate_dnls(u0, ic);
  GaugeDiagnostics fwd, inv;
  const SpaceTimeField V = gauge_forward(U, nullptr, &fwd);
  const SpaceTimeField B = gauge_inverse(V, &inv);

  auto& csv = r.files.open("gauge_check.csv");
  csv << "t,roundtrip,l2_defect,mass_drift\n";
  const double m0 = mass(u0);
  double worst_rt = 0.0, worst_l2 = 0.0, worst_mass = 0.0;
  for (Index j = 0; j < U.time.n; ++j) {
    const SpectralField u = U.slice(j);
    const double nu = l2(u);
    const double rt = l2(B.slice(j) - u) / nu;
    const double d = std::abs(l2(V.slice(j)) - nu) / nu;
    const double md = std::abs(mass(u) - m0) / m0;
    csv << U.time[j] << ',' << rt << ',' << d << ',' << md << '\n';
    worst_rt = std::max(worst_rt, rt);
    worst_l2 = std::max(worst_l2, d);
    worst_mass = std::max(worst_mass, md);
  }
  const double t0_gap = (V.slice(U.time.nearest(0.0)) - gauge_data(u0)).modes().cwiseAbs().maxCoeff();
  r.summary["max_roundtrip"] = worst_rt;
  r.summary["max_l2_defect"] = worst_l2;
  r.summary["max_mass_drift"] = worst_mass;
  r.summary["t0_gauge_data_gap"] = t0_gap;
  r.check(worst_rt <= 1e-10, "gauge round trip error above 1e-10");
  r.check(worst_l2 <= 1e-10, "gauge l2 defect above 1e-10");
  r.check(t0_gap == 0.0, "gauge_forward at t = 0 differs from gauge_data");
}

// Reads a field file, skipping an artifact header when present.
std::string read_body(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("norms: cannot open field file '" + path + "'");
  std::string body, line;
  bool header = true;
  while (std::getline(f, line)) {
    if (header && !line.empty() && line[0] == '#') continue;
    header = false;
    body += line + '\n';
  }
  return body;
}

void cmd_norms(Run& r) {
  const RunConfig& c = r.cfg;
  const ParameterLadder L = ladder(c.number("p0"), c.number("delta"), c.number("A"));
  auto& csv = r.files.open("norms.csv");
  csv << "norm,sigma,p,value\n";
  const std::string path = c.get("field");
  const std::string body = path.empty() ? std::string() : read_body(path);
  const bool spacetime = body.find("t_start=") != std::string::npos;
  if (spacetime) {
    std::istringstream in(body);
    const SpaceTimeField F = read_spacetime(in);
    const SpaceTimeField tw = twist(F, lambda_grid_for(F.time, c.number("lambda_extent"), c.number("lambda_step")));
    for (const NormSpec& s : {space_Y0(L), space_Y1(L), space_Z0(L), space_Z1(L)}) {
      const XsbDetail d = xsb_norm_detail(tw, s);
      csv << s.name << ',' << s.s << ',' << s.p << ',' << d.value << '\n';
      r.summary[s.name] = d.value;
    }
  } else {
    SpectralField f;
    if (path.empty()) {
      f = random_data(c, c.number("amplitude"));
    } else {
      std::istringstream in(body);
      f = read_field(in);
    }
    for (double sigma : {0.0, 0.5, 1.0, 2.0})
      for (double p : {1.0, 2.0, L.p0}) csv << "fl," << sigma << ',' << p << ',' << fl_norm(f, sigma, p) << '\n';
    r.summary["h_half_p0"] = fl_norm(f, 0.5, L.p0);
  }
  auto& lad = r.files.open("ladder.csv");
  lad << "name,value\n";
  const std::pair<const char*, double> rows[] = {
      {"p0", L.p0}, {"delta", L.delta}, {"b0", L.b0}, {"b1", L.b1}, {"q0", L.q0}, {"q1", L.q1}, {"r0", L.r0},
      {"r1", L.r1}, {"r2", L.r2}, {"theta", L.theta}, {"A", L.A}, {"A1", L.A1}, {"A2", L.A2}, {"A3", L.A3}};
  for (const auto& [n, v] : rows) lad << n << ',' << v << '\n';
  r.summary["radii_capped"] = L.radii_capped;
}

void write_row(std::ostream& os, const CaseRow& row) {
  os << row.name << ',' << row.count << ',' << row.violations << ',' << row.max_ratio << ',' << row.witness << '\n';
}

void cmd_classify(Run& r) {
  const long long K = r.cfg.integer("K"), C = r.cfg.integer("chain_K");
  const Prop23Report p = verify_prop23(K);
  auto& csv = r.files.open("classify.csv");
  csv << "item,count,violations,max_ratio,witness\n";
  for (const auto& [cls, n] : p.class_counts) csv << "class_" << cls << ',' << n << ",0,0,\n";
  for (const CaseRow& row : p.item) write_row(csv, row);
  write_row(csv, p.ratio_high);
  write_row(csv, p.delta_max);
  write_row(csv, p.delta_min);
  csv << "partition," << p.triples << ',' << p.partition_violations << ",0,\n";
  csv << "delta_factorization," << p.triples << ',' << p.delta_mismatches << ",0,\n";
  r.summary["triples"] = p.triples;
  r.check(p.partition_violations == 0, "class partition violated");
  r.check(p.delta_mismatches == 0, "resonance factorization mismatch");
  r.check(p.exact_items_ok(), "class inequality items violated");
  if (C > 0) {
    const Prop24Report q = verify_prop24(C);
    auto& chains = r.files.open("chains.csv");
    chains << "case,count,violations,max_ratio,witness\n";
    for (const auto& [name, row] : q.cases) write_row(chains, row);
    chains << "unclassified," << q.chains << ',' << q.unclassified << ",0,\n";
    r.summary["chains"] = q.chains;
    r.check(q.unclassified == 0, "chained pairs without a case");
    r.check(q.structural_violations() == 0, "chained-pair structural conditions violated");
  }
}

void cmd_kernels(Run& r) {
  const auto deltas = r.cfg.numbers("deltas");
  const auto rows = kernel_bound_stability(deltas);
  auto& csv = r.files.open("kernel_bounds.csv");
  csv << "bound,delta,coarse,fine,variation,stable\n";
  bool all = true;
  for (const auto& b : rows) {
    csv << to_string(b.bound) << ',' << b.delta << ',' << b.coarse.constant << ',' << b.fine.constant << ','
        << b.variation << ',' << (b.stable() ? 1 : 0) << '\n';
    all = all && b.stable();
  }
  auto& tab = r.files.open("kernels.csv");
  tab << "lambda,sigma,delta,A,AY,BY,P\n";
  const auto lam = symmetric_points(32.0, 8.0), sig = symmetric_points(32.0, 8.0);
  const KernelGrid g = evaluate_kernel_grid(lam, sig, deltas);
  for (std::size_t d = 0; d < g.deltas.size(); ++d)
    for (std::size_t i = 0; i < g.lambda.size(); ++i)
      for (std::size_t j = 0; j < g.sigma.size(); ++j) {
        const KernelPieces& k = g.pieces[d][i * g.sigma.size() + j];
        tab << g.lambda[i] << ',' << g.sigma[j] << ',' << g.deltas[d] << ',' << k.A << ',' << k.AY << ','
            << k.BY << ',' << k.P << '\n';
      }
  r.summary["bounds"] = rows.size();
  r.check(all, "a kernel bound constant varies by 2x or more under grid refinement");
}

Multiplier load_multiplier(const RunConfig& c, int arity) {
  const std::string& m = c.get("multiplier");
  if (m == "unit") return Multiplier::unit(arity);
  Multiplier f = Multiplier::from_file(m);
  return f.arity() == arity ? f : Multiplier::unit(arity);
}

void cmd_fixpoint(Run& r) {
  const RunConfig& c = r.cfg;
  const ParameterLadder L = ladder(c.number("p0"), c.number("delta"), c.number("A"));
  const double T = c.number("T");
  const Multiplier M3 = load_multiplier(c, 3), M5 = load_multiplier(c, 5);
  const SpectralField v0 = gauge_data(random_data(c, c.number("epsilon")));
  PicardOptions opt;
  opt.tol = c.number("tol");
  opt.max_iter = int(c.integer("max_iter"));
  opt.steps_per_T = int(c.integer("steps_per_T"));
  const ParacontrolledPair pair = picard_solve_w(v0, L, T, M3, M5, opt);
  if (!pair.converged)
    throw NumericError("fixpoint: outer iteration did not converge within max_iter",
                       "last residual " + std::to_string(pair.log.empty() ? 0.0 : pair.log.back().residual));
  auto& csv = r.files.open("fixpoint.csv");
  csv << "iter,ratio,residual,z_bound,y_bound\n";
  for (const auto& e : pair.log)
    csv << e.iter << ',' << e.ratio << ',' << e.residual << ',' << e.z_bound << ',' << e.y_bound << '\n';
  const MembershipReport m = manifold_membership(pair.v, opt.tol, M3, L, T);
  double recovery = 0.0;
  if (m.converged) recovery = (m.w.physical - pair.w.physical).cwiseAbs().maxCoeff();
  r.summary["iterations"] = pair.log.size();
  r.summary["inner_residual"] = pair.residual;
  r.summary["member"] = m.member;
  r.summary["recovery"] = recovery;
  r.check(m.member, "fixed point outside the manifold balls: " + m.diagnostics);
}

std::array<int, 3> parse_signs(const std::string& p) {
  return {p[0] == '+' ? 1 : -1, p[1] == '+' ? 1 : -1, p[2] == '+' ? 1 : -1};
}

void cmd_divisors(Run& r) {
  const RunConfig& c = r.cfg;
  const auto shells = c.integers("shells");
  const int samples = int(c.integer("systems"));
  std::vector<std::string> patterns;
  {
    std::stringstream ss(c.get("patterns"));
    for (std::string p; std::getline(ss, p, ',');)
      if (!p.empty()) patterns.push_back(p);
  }
  const RngStreams streams(c.seed());
  auto& csv = r.files.open("divisors.csv");
  csv << "N1,N2,N3,sign_pattern,const1,const2,count\n";
  auto& fit = r.files.open("divisors_fit.csv");
  fit << "sign_pattern,slope_mean,slope_max\n";
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& pat : patterns) {
    const auto signs = parse_signs(pat);
    SystemSpec probe;
    probe.signs = signs;
    std::vector<std::pair<double, double>> means, maxima;
    for (long long N : shells) {
      std::vector<SystemSpec> specs;
      for (int s = 0; s < samples; ++s) {
        auto rng = streams.stream("divisors/" + pat + "/N" + std::to_string(N) + "/s" + std::to_string(s));
        std::uniform_int_distribution<long long> mag(N, 2 * N - 1), sign(0, 1);
        auto draw = [&] { return sign(rng) ? mag(rng) : -mag(rng); };
        long long a, b, d;
        do {
          a = draw();
          b = draw();
          d = draw();
        } while (has_pairing(probe, a, b, d));
        specs.push_back(system_through(signs, {N, N, N}, a, b, d));
      }
      std::vector<long long> counts(specs.size());
      detail::parallel_for((long long)specs.size(),
                           [&](long long i) { counts[std::size_t(i)] = count_system_solutions_fast(specs[std::size_t(i)], 0).count; });
      long long best = 0, total = 0;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        csv << N << ',' << N << ',' << N << ',' << pat << ',' << specs[i].c1 << ',' << specs[i].c2 << ','
            << counts[i] << '\n';
        best = std::max(best, counts[i]);
        total += counts[i];
      }
      means.emplace_back(double(N), std::max(1.0, double(total) / double(samples)));
      maxima.emplace_back(double(N), double(std::max<long long>(best, 1)));
    }
    // Every sampled system has at least its generating solution, so the mean is a typical count;
    // the maximum over the sample is reported alongside.
    const double slope = growth_fit(means), slope_max = growth_fit(maxima);
    fit << pat << ',' << slope << ',' << slope_max << '\n';
    r.summary["slope_" + pat] = slope;
    worst = std::max(worst, slope);
  }
  r.check(worst <= 0.2, "no-pairing count growth slope above 0.2");
}

void cmd_probe(Run& r) {
  const RunConfig& c = r.cfg;
  const ParameterLadder L = ladder(c.number("p0"), c.number("delta"), c.number("A"));
  std::vector<int> ns;
  for (long long n : c.integers("n_values")) ns.push_back(int(n));
  const int samples = int(c.integer("samples"));
  const std::string& est = c.get("estimate");
  const ProbeReport rep = est == "trilinear"
                              ? trilinear_probe(c.numbers("p_values"), ns, samples, c.seed(), L)
                              : ey_bound_probe(est == "EY_N" ? TripleClass::N : TripleClass::L, ns, samples,
                                               c.seed(), L);
  write_probe_csv(r.files.open("probe.csv"), rep);
  for (const auto& [p, g] : rep.max_doubling_growth()) {
    const std::string key = "growth_p" + std::to_string(p).substr(0, 4);
    r.summary[key] = g;
    // The stability assertion only covers the regimes where the estimate is known to hold.
    if (est != "trilinear" || p < 4.0) r.check(g <= 2.0, "probe constant more than doubles (p = " + std::to_string(p) + ")");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments for the periodic derivative nonlinear Schroedinger equation", "dnls"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> flag_values;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "configuration file (key = value lines) or an earlier artifact");
  const std::pair<const char*, const char*> flags[] = {
      {"--n-max", "n_max"}, {"--dt", "dt"},       {"--T", "T"},     {"--p0", "p0"},
      {"--delta", "delta"}, {"--seed", "seed"},   {"--out", "out"}, {"--multiplier", "multiplier"}};
  for (const auto& [flag, key] : flags) app.add_option(flag, flag_values[key], std::string("sets ") + key);
  app.add_option("--set", sets, "any configuration key as key=value (repeatable)");
  const char* const commands[][2] = {
      {"simulate", "integrate the equation and write the t, mass, l2, h_half_p0 series"},
      {"gauge-check", "gauge round trip and conservation along a simulated trajectory"},
      {"norms", "norm report for a field file or random data"},
      {"classify", "exhaustive interaction class checks"},
      {"kernels", "Duhamel kernel tables and bound-constant stability"},
      {"fixpoint", "para-controlled fixed-point run with its convergence log"},
      {"divisors", "divisor-counting experiments"},
      {"probe", "empirical constants of the multilinear estimates"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg.load_file(config_path);
    cfg.set("command", command, ConfigSource::Flag);
    for (const auto& [flag, key] : flags)
      if (app.count(flag) > 0) cfg.set(key, flag_values[key], ConfigSource::Flag);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InvalidArgument("config: --set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1), ConfigSource::Flag);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    err << error_record(command, "invalid_config", kExitUsage, e.what()) << '\n';
    return kExitUsage;
  }

  ArtifactSet files(cfg.get("out"), artifact_header(cfg));
  Run run{cfg, files, Json::object(), {}};
  run.summary["status"] = "ok";
  run.summary["command"] = command;
  try {
    if (command == "simulate") cmd_simulate(run);
    else if (command == "gauge-check") cmd_gauge_check(run);
    else if (command == "norms") cmd_norms(run);
    else if (command == "classify") cmd_classify(run);
    else if (command == "kernels") cmd_kernels(run);
    else if (command == "fixpoint") cmd_fixpoint(run);
    else if (command == "divisors") cmd_divisors(run);
    else if (command == "probe") cmd_probe(run);
    files.commit();
  } catch (const AssertionFailure& e) {
    err << error_record(command, "assertion", kExitAssertion, e.what()) << '\n';
    return kExitAssertion;
  } catch (const DivergenceError& e) {
    std::ostringstream h;
    for (double x : e.history()) h << (h.tellp() > 0 ? " " : "") << x;
    err << error_record(command, "divergence", kExitNumeric, e.what(), h.str()) << '\n';
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << error_record(command, "numeric", kExitNumeric, e.what(), e.diagnostics()) << '\n';
    return kExitNumeric;
  } catch (const InvalidArgument& e) {
    err << error_record(command, "invalid_argument", kExitUsage, e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << error_record(command, "numeric", kExitNumeric, e.what()) << '\n';
    return kExitNumeric;
  }
  run.summary["artifacts"] = files.names();
  if (!run.failures.empty()) {
    std::string msg;
    for (const auto& f : run.failures) msg += (msg.empty() ? "" : "; ") + f;
    err << error_record(command, "assertion", kExitAssertion, msg) << '\n';
    return kExitAssertion;
  }
  out << run.summary.dump() << '\n';
  return kExitOk;
}

}  // namespace dnls

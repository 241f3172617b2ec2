#include "dnls/paracontrolled.hpp"

#include <cmath>
#include <sstream>

#include "dnls/cutoff.hpp"
#include "dnls/duhamel.hpp"
#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

double sup_diff(const SpaceTimeField& a, const SpaceTimeField& b) {
  return (a.physical - b.physical).cwiseAbs().maxCoeff();
}

template <typename F>
SpaceTimeField per_slice(const TimeGrid& grid, int n_max, F&& f) {
  SpaceTimeField out(n_max, grid);
  for (Index j = 0; j < grid.n; ++j) out.set_slice(j, f(j));
  return out;
}

SpaceTimeField localize(SpaceTimeField f, double T) {
  const CutoffProfile phiT(T);
  for (Index j = 0; j < f.time.n; ++j) f.physical.row(j) *= phiT(f.time[j]);
  return f;
}

void require_same(const SpaceTimeField& a, const SpaceTimeField& b, const char* who) {
  a.require_physical();
  b.require_physical();
  if (a.n_max != b.n_max || !(a.time == b.time))
    throw InvalidArgument(std::string(who) + ": fields must share band and time grid");
}

// Tracks successive differences and flags three consecutive non-contracting steps.
struct ContractionMonitor {
  explicit ContractionMonitor(std::vector<IterationRecord>* l) : log(l) {}
  std::vector<IterationRecord>* log;
  std::vector<double> ratios;
  int bad = 0;
  double prev = 0.0;

  // Returns the ratio; throws once the iteration has failed to contract three times in a row.
  double push(double d, const std::string& who) {
    const double r = (log->empty() || !(prev > 0.0)) ? 0.0 : d / prev;
    if (!std::isfinite(d)) {
      ratios.push_back(r);
      throw DivergenceError(who + ": non-finite iterate", ratios);
    }
    if (!log->empty() && prev > 0.0) {
      ratios.push_back(r);
      bad = r >= 1.0 ? bad + 1 : 0;
      if (bad >= 3) throw DivergenceError(who + ": ratio >= 1 for three consecutive steps", ratios);
    }
    prev = d;
    IterationRecord rec;
    rec.iter = int(log->size()) + 1;
    rec.ratio = r;
    rec.residual = d;
    log->push_back(rec);
    return r;
  }
};

}  // namespace

std::vector<double> ParacontrolledPair::ratios() const {
  std::vector<double> r;
  for (std::size_t i = 1; i < log.size(); ++i) r.push_back(log[i].ratio);
  return r;
}

TimeGrid paracontrolled_grid(double T, int steps_per_T) {
  if (!(T > 0.0) || T > 1.0) throw InvalidArgument("paracontrolled_grid: need 0 < T <= 1");
  if (steps_per_T < 2) throw InvalidArgument("paracontrolled_grid: steps_per_T must be >= 2");
  return TimeGrid::symmetric(2.0 * T, T / double(steps_per_T));
}

SpaceTimeField v_map(const SpaceTimeField& w, const SpaceTimeField& v, const Multiplier& M) {
  require_same(w, v, "v_map");
  SpaceTimeField out = w;
  out.physical += EY_apply(TripleClass::N, w, w, v, M, false).physical;
  out.physical += EY_apply(TripleClass::L, w, v, v, M, false).physical;
  return out;
}

ParacontrolledPair solve_v_given_w(const SpaceTimeField& w, double tol, int max_iter, const Multiplier& M) {
  w.require_physical();
  if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("solve_v_given_w: need tol > 0 and max_iter >= 1");
  ParacontrolledPair pair;
  pair.w = w;
  SpaceTimeField v = w;
  ContractionMonitor mon{&pair.log};
  for (int it = 0; it < max_iter; ++it) {
    SpaceTimeField next = v_map(w, v, M);
    const double d = sup_diff(next, v);
    mon.push(d, "solve_v_given_w");
    v = std::move(next);
    if (d <= tol) {
      pair.converged = true;
      break;
    }
  }
  pair.residual = sup_diff(v_map(w, v, M), v);
  pair.v = std::move(v);
  return pair;
}

const std::array<const char*, WRhs::kCount>& WRhs::names() {
  static const std::array<const char*, kCount> n{"free", "Q", "CH", "CS", "CN_diff", "CL_diff", "EX_N", "EX_L"};
  return n;
}

SpaceTimeField WRhs::total() const {
  SpaceTimeField out = terms[0];
  for (int i = 1; i < kCount; ++i) out.physical += terms[std::size_t(i)].physical;
  return out;
}

WRhs w_rhs_terms(const SpaceTimeField& w, const SpaceTimeField& v, const SpectralField& v0, const Multiplier& M3,
                 const Multiplier& M5) {
  require_same(w, v, "w_rhs");
  if (v0.n_max() != w.n_max) throw InvalidArgument("w_rhs: v0 must share the band of w");
  if (M3.arity() != 3 || M5.arity() != 5) throw InvalidArgument("w_rhs: expected cubic and quintic multipliers");
  const TimeGrid& tg = w.time;
  const int n = w.n_max;
  WRhs r;
  r.terms[0] = per_slice(tg, n, [&](Index j) { return linear_flow(v0, tg[j]); });
  const SpaceTimeField Q = per_slice(tg, n, [&](Index j) {
    const SpectralField s = v.slice(j);
    return quintic_apply(s, s, s, s, s, M5);
  });
  r.terms[1] = duhamel_trajectory(Q);

  SpaceTimeField CH(n, tg), CS(n, tg), CN(n, tg), CL(n, tg);
  for (Index j = 0; j < tg.n; ++j) {
    const SpectralField vs = v.slice(j), ws = w.slice(j);
    const CubicParts vvv = cubic_parts(vs, vs, vs, M3);
    CH.set_slice(j, vvv.H);
    CS.set_slice(j, vvv.S);
    CN.set_slice(j, vvv.N - cubic_apply(CubicKind::N, ws, ws, vs, M3));
    CL.set_slice(j, vvv.L - cubic_apply(CubicKind::L, ws, vs, vs, M3));
  }
  r.terms[2] = duhamel_trajectory(CH);
  r.terms[3] = duhamel_trajectory(CS);
  r.terms[4] = duhamel_trajectory(CN);
  r.terms[5] = duhamel_trajectory(CL);

  r.terms[6] = ic_apply(TripleClass::N, w, w, v, M3, false);
  r.terms[6].physical -= EY_apply(TripleClass::N, w, w, v, M3, false).physical;
  r.terms[7] = ic_apply(TripleClass::L, w, v, v, M3, false);
  r.terms[7].physical -= EY_apply(TripleClass::L, w, v, v, M3, false).physical;
  return r;
}

SpaceTimeField w_rhs(const SpaceTimeField& w, const SpaceTimeField& v, const SpectralField& v0, const Multiplier& M3,
                     const Multiplier& M5) {
  return w_rhs_terms(w, v, v0, M3, M5).total();
}

double localized_norm(const SpaceTimeField& f, const NormSpec& spec, double T) {
  const SpaceTimeField e = localize(f, T);
  return xsb_norm(twist(e, lambda_grid_for(e.time)), spec);
}

ParacontrolledPair picard_solve_w(const SpectralField& v0, const ParameterLadder& L, double T, const Multiplier& M3,
                                  const Multiplier& M5, const PicardOptions& opt) {
  if (!(opt.tol > 0.0) || opt.max_iter < 1) throw InvalidArgument("picard_solve_w: need tol > 0 and max_iter >= 1");
  const TimeGrid tg = paracontrolled_grid(T, opt.steps_per_T);
  const int n = v0.n_max();
  SpaceTimeField w;
  if (opt.initial) {
    w = *opt.initial;
    if (w.n_max != n || !(w.time == tg))
      throw InvalidArgument("picard_solve_w: initial guess must live on paracontrolled_grid(T)");
  } else {
    w = localize(per_slice(tg, n, [&](Index j) { return linear_flow(v0, tg[j]); }), T);
  }
  const double inner_tol = opt.tol / 100.0;
  const NormSpec Z0 = space_Z0(L), Y0 = space_Y0(L);

  ParacontrolledPair pair;
  ContractionMonitor mon{&pair.log};
  ParacontrolledPair inner;
  auto inner_solve = [&](int outer) {
    try {
      inner = solve_v_given_w(w, inner_tol, opt.inner_max_iter, M3);
    } catch (const DivergenceError& e) {
      throw DivergenceError("inner solve (outer iteration " + std::to_string(outer) + "): " + e.what(),
                            e.history());
    }
    if (!inner.converged)
      throw NumericError("inner solve (outer iteration " + std::to_string(outer) + ") did not converge",
                         "residual " + std::to_string(inner.residual));
  };
  for (int it = 0; it < opt.max_iter; ++it) {
    inner_solve(it + 1);
    SpaceTimeField next = localize(w_rhs(w, inner.v, v0, M3, M5), T);
    const double d = sup_diff(next, w);
    mon.push(d, "outer iteration");
    w = std::move(next);
    if (opt.norm_log) {
      pair.log.back().z_bound = localized_norm(w, Z0, T);
      pair.log.back().y_bound = localized_norm(inner.v, Y0, T);
    }
    if (d <= opt.tol) {
      pair.converged = true;
      break;
    }
  }
  inner_solve(int(pair.log.size()) + 1);
  pair.w = std::move(w);
  pair.v = std::move(inner.v);
  pair.residual = inner.residual;
  return pair;
}

MembershipReport manifold_membership(const SpaceTimeField& v, double tol, const Multiplier& M,
                                     const ParameterLadder& L, double T, int max_iter) {
  v.require_physical();
  MembershipReport rep;
  rep.A2 = L.A2;
  rep.A3 = L.A3;
  SpaceTimeField w = v;
  ContractionMonitor mon{&rep.log};
  try {
    for (int it = 0; it < max_iter; ++it) {
      SpaceTimeField next = v;
      next.physical -= EY_apply(TripleClass::N, w, w, v, M, false).physical;
      next.physical -= EY_apply(TripleClass::L, w, v, v, M, false).physical;
      const double d = sup_diff(next, w);
      mon.push(d, "manifold_membership");
      w = std::move(next);
      if (d <= tol) {
        rep.converged = true;
        break;
      }
    }
    if (!rep.converged) rep.diagnostics = "no convergence within " + std::to_string(max_iter) + " iterations";
  } catch (const DivergenceError& e) {
    std::ostringstream ss;
    ss << e.what() << "; ratios";
    for (double r : e.history()) ss << ' ' << r;
    rep.diagnostics = ss.str();
  }
  if (rep.converged) {
    rep.z_bound = localized_norm(w, space_Z0(L), T);
    rep.y_bound = localized_norm(v, space_Y0(L), T);
    rep.member = rep.z_bound <= rep.A2 && rep.y_bound <= rep.A3;
    if (!rep.member) rep.diagnostics = "converged but a ball condition fails";
  }
  rep.w = std::move(w);
  return rep;
}

double nonlinear_order(const SpaceTimeField& w, double c, const Multiplier& M, double tol) {
  if (!(c > 0.0) || c == 1.0) throw InvalidArgument("nonlinear_order: need c > 0, c != 1");
  SpaceTimeField cw = w;
  cw.physical *= c;
  const ParacontrolledPair a = solve_v_given_w(w, tol, 50, M);
  const ParacontrolledPair b = solve_v_given_w(cw, tol * c * c * c, 50, M);
  const double da = sup_diff(a.v, a.w), db = sup_diff(b.v, b.w);
  if (!(da > 0.0) || !(db > 0.0)) throw InvalidArgument("nonlinear_order: vanishing nonlinear part");
  return std::log(db / da) / std::log(c);
}

SpaceTimeField reconstruct_solution(const ParacontrolledPair& pair) { return gauge_inverse(pair.v); }

}  // namespace dnls

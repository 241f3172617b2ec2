#include <cmath>
#include <random>

#include "doctest.h"
#include "dnls/duhamel.hpp"
#include "dnls/gauge.hpp"
#include "dnls/paracontrolled.hpp"
#include "dnls/random.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

// Free evolution of eps * (smooth random data) on the paracontrolled grid for [0, T].
SpaceTimeField small_free_wave(double eps, double T, std::uint64_t seed, int n = 16) {
  std::mt19937_64 rng(seed);
  const SpectralField f = smooth_random_field(n, eps, rng);
  const TimeGrid tg = paracontrolled_grid(T);
  SpaceTimeField w(n, tg);
  for (Index j = 0; j < tg.n; ++j) w.set_slice(j, linear_flow(f, tg[j]));
  return w;
}

double sup_diff(const SpaceTimeField& a, const SpaceTimeField& b) {
  return (a.physical - b.physical).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("paracontrolled grid covers [-2T, 2T]") {
  const TimeGrid g = paracontrolled_grid(0.1, 64);
  CHECK(g.start == doctest::Approx(-0.2));
  CHECK(g.back() == doctest::Approx(0.2));
  CHECK(g.step == doctest::Approx(0.1 / 64));
  CHECK(g.has_point(0.0));
}

TEST_CASE("inner fixed point contracts at eps = 1e-3") {
  const Multiplier M = Multiplier::unit(3);
  const SpaceTimeField w = small_free_wave(1e-3, 0.1, 21);
  const ParacontrolledPair p = solve_v_given_w(w, 1e-12, 10, M);
  CHECK(p.converged);
  CHECK(p.residual <= 1e-8);
  for (double r : p.ratios()) CHECK(r <= 0.5);
  // The fixed point satisfies the defining equation.
  SpaceTimeField rhs = v_map(w, p.v, M);
  CHECK(sup_diff(rhs, p.v) <= 1e-8);
}

TEST_CASE("map w -> v[w] is Lipschitz with a consistent constant") {
  const Multiplier M = Multiplier::unit(3);
  const SpaceTimeField w = small_free_wave(1e-2, 0.1, 22);
  const SpaceTimeField dir = small_free_wave(1.0, 0.1, 23);
  const SpaceTimeField v = solve_v_given_w(w, 1e-14, 30, M).v;
  double Ls[2];
  int i = 0;
  for (double h : {1e-4, 1e-5}) {
    SpaceTimeField w2 = w;
    w2.physical += h * dir.physical;
    const SpaceTimeField v2 = solve_v_given_w(w2, 1e-14, 30, M).v;
    Ls[i++] = sup_diff(v2, v) / sup_diff(w2, w);
  }
  CHECK(Ls[0] > 0.0);
  CHECK(Ls[0] / Ls[1] < 2.0);
  CHECK(Ls[1] / Ls[0] < 2.0);
}

TEST_CASE("nonlinear part of v[w] - w is cubic") {
  const SpaceTimeField w = small_free_wave(1e-2, 0.1, 24);
  CHECK(nonlinear_order(w, 2.0, Multiplier::unit(3), 1e-16) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("manifold membership recovers the generating w") {
  const Multiplier M = Multiplier::unit(3);
  const ParameterLadder L = ladder(4.0, 0.01);
  const double tol = 1e-12;
  const SpaceTimeField w = small_free_wave(1e-3, 0.1, 25);
  const ParacontrolledPair p = solve_v_given_w(w, tol, 30, M);
  const MembershipReport m = manifold_membership(p.v, tol, M, L, 0.1);
  CHECK(m.converged);
  CHECK(m.member);
  CHECK(sup_diff(m.w, w) <= 10.0 * tol);
  CHECK(m.z_bound > 0.0);
  CHECK(m.z_bound <= m.A2);
}

TEST_CASE("huge data are not members") {
  const ParameterLadder L = ladder(4.0, 0.01);
  const SpaceTimeField v = small_free_wave(1e3, 0.1, 26);
  const MembershipReport m = manifold_membership(v, 1e-12, Multiplier::unit(3), L, 0.1);
  CHECK_FALSE(m.member);
  CHECK_FALSE(m.diagnostics.empty());
}

TEST_CASE("w-equation summands reassemble the total") {
  const Multiplier M3 = Multiplier::unit(3), M5 = Multiplier::unit(5);
  const SpaceTimeField w = small_free_wave(1e-2, 0.1, 27, 8);
  const SpaceTimeField v = solve_v_given_w(w, 1e-14, 30, M3).v;
  const SpectralField v0 = v.slice(v.time.nearest(0.0));
  const WRhs parts = w_rhs_terms(w, v, v0, M3, M5);
  CHECK(WRhs::names().size() == 8);
  SpaceTimeField sum = parts.terms[0];
  for (int i = 1; i < WRhs::kCount; ++i) sum.physical += parts.terms[std::size_t(i)].physical;
  CHECK(sup_diff(sum, parts.total()) == 0.0);
  CHECK(sup_diff(w_rhs(w, v, v0, M3, M5), parts.total()) == 0.0);
  // The free term is the linear flow of v0.
  const Index j = v.time.n - 1;
  CHECK((parts.terms[0].slice(j).modes() - linear_flow(v0, v.time[j]).modes()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("outer Picard iteration converges to the same point from two initial guesses") {
  const ParameterLadder L = ladder(4.0, 0.01);
  const Multiplier M3 = Multiplier::unit(3), M5 = Multiplier::unit(5);
  const SpectralField v0 = gauge_data(SpectralField::single_mode(16, 3, cplx(1e-3, 0.0)));
  PicardOptions opt;
  opt.tol = 1e-12;
  opt.max_iter = 12;
  const ParacontrolledPair a = picard_solve_w(v0, L, 0.1, M3, M5, opt);
  CHECK(a.converged);
  for (const auto& e : a.log)
    if (e.iter > 1) CHECK(e.ratio <= 0.5);

  opt.initial = small_free_wave(1e-3, 0.1, 28);
  const ParacontrolledPair b = picard_solve_w(v0, L, 0.1, M3, M5, opt);
  CHECK(b.converged);
  CHECK(sup_diff(a.w, b.w) <= 10.0 * opt.tol);

  // Slice 0 of the reconstruction is the inverse gauge of v(0).
  const SpaceTimeField u = reconstruct_solution(a);
  const Index j0 = u.time.nearest(0.0);
  SpaceTimeField one(16, UniformGrid{0.0, 1.0, 1});
  one.set_slice(0, a.v.slice(j0));
  CHECK((u.slice(j0).modes() - gauge_inverse(one).slice(0).modes()).cwiseAbs().maxCoeff() <= 1e-10);
}

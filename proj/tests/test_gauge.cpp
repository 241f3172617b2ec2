#include <cmath>

#include "doctest.h"
#include "dnls/gauge.hpp"
#include "dnls/random.hpp"
#include "dnls/solver.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

TEST_CASE("gauge data of 2 cos x is exp(-i sin 2x) 2 cos x") {
  const int n = 24;
  SpectralField u0(n);
  u0(1) = 1.0;
  u0(-1) = 1.0;
  const SpectralField G = gauge_phase(u0);
  // G = sin 2x: modes +-2 equal -i/2 and i/2.
  CHECK(std::abs(G(2) - cplx(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(G(-2) - cplx(0.0, 0.5)) < 1e-14);
  CHECK(G.modes().cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-13));

  // Oracle: sample the closed form on a fine grid and take a direct DFT.
  const int M = 512;
  SpectralField want(n);
  for (int k = -n; k <= n; ++k) {
    cplx s = 0;
    for (int j = 0; j < M; ++j) {
      const double x = 2.0 * M_PI * j / M;
      s += std::polar(1.0, -std::sin(2.0 * x)) * 2.0 * std::cos(x) * std::polar(1.0, -double(k) * x);
    }
    want(k) = s / double(M);
  }
  CHECK((gauge_data(u0).modes() - want.modes()).cwiseAbs().maxCoeff() < 1e-13);
}

namespace {

SpaceTimeField corpus_trajectory(int index) {
  const SpectralField u0 = corpus_field(20240917, index, 32, 0.1);
  IntegratorConfig cfg;
  cfg.n_max = 32;
  cfg.dt = 1e-3;
  cfg.T = 0.2;
  cfg.save_every = 20;
  return integrate_dnls(u0, cfg);
}

}  // namespace

TEST_CASE("gauge round trip and L2 preservation on the smooth corpus") {
  for (int i = 0; i < 3; ++i) {
    const SpaceTimeField u = corpus_trajectory(i);
    GaugeRecord rec;
    GaugeDiagnostics fd, bd;
    const SpaceTimeField v = gauge_forward(u, &rec, &fd);
    const SpaceTimeField w = gauge_inverse(v, &bd);
    CHECK(rec.mu == doctest::Approx(u.physical.row(0).squaredNorm()));
    CHECK(fd.max_l2_defect <= 1e-10);
    for (Index j = 0; j < u.time.n; ++j) {
      const double nu = u.physical.row(j).norm();
      CHECK((w.physical.row(j) - u.physical.row(j)).norm() <= 1e-10 * nu);
      CHECK(std::abs(v.physical.row(j).norm() - nu) <= 1e-10 * nu);
    }
  }
}

TEST_CASE("gauge slice at t = 0 equals gauge_data") {
  const SpaceTimeField u = corpus_trajectory(4);
  const SpaceTimeField v = gauge_forward(u);
  const SpectralField g = gauge_data(u.slice(0));
  CHECK((v.slice(0).modes() - g.modes()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gauge needs t = 0 on the grid") {
  SpaceTimeField u(4, UniformGrid::span(0.5, 1.0, 0.25));
  CHECK_THROWS_AS(gauge_forward(u), InvalidArgument);
  SpaceTimeField tw = SpaceTimeField::twisted_only(4, UniformGrid::symmetric(1.0, 0.5));
  CHECK_THROWS_AS(gauge_forward(tw), StateError);
}

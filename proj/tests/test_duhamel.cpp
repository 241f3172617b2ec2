#include <cmath>

#include "doctest.h"
#include "dnls/duhamel.hpp"
#include "dnls/kernels.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

// phi^-weighted Gaussian:  g(s) = e^{i D s} e^{-3 s^2}  has  g^(sigma) = sqrt(pi/3)/(2 pi) e^{-(sigma-D)^2/12}.
double gauss_hat(double sigma, double D) {
  return std::sqrt(M_PI / 3.0) / (2.0 * M_PI) * std::exp(-(sigma - D) * (sigma - D) / 12.0);
}

template <typename Kernel>
cplx apply_kernel(Kernel&& K, double lambda, double D) {
  const GaussRule& gr = gauss_legendre(12);
  cplx acc = 0;
  for (int p = 0; p < 50; ++p) {
    const double a = D - 25.0 + p;
    for (std::size_t i = 0; i < gr.x.size(); ++i) {
      const double s = a + 0.5 + 0.5 * gr.x[i];
      acc += 0.5 * gr.w[i] * K(lambda, s) * gauss_hat(s, D);
    }
  }
  return acc;
}

// Single-mode inputs  v_j = e^{-s^2} e^{-i k_j^2 s}  on modes (1, 2, 0): one N-class triple with
// output mode 1 and Delta = -2, whose twisted integrand is e^{-2is} e^{-3s^2}.
struct Trio {
  SpaceTimeField v1, v2, v3;
};
Trio single_mode_trio(const TimeGrid& tg) {
  const int n = 2;
  Trio t{SpaceTimeField(n, tg), SpaceTimeField(n, tg), SpaceTimeField(n, tg)};
  auto fill = [&](SpaceTimeField& v, int k) {
    for (Index j = 0; j < tg.n; ++j) {
      const double s = tg[j];
      v.physical(j, v.col(k)) = std::polar(std::exp(-s * s), -double(k * k) * s);
    }
  };
  fill(t.v1, 1);
  fill(t.v2, 2);
  fill(t.v3, 0);
  return t;
}

}  // namespace

TEST_CASE("Duhamel of a constant forcing") {
  const TimeGrid tg = UniformGrid::span(0.0, 1.0, 1.0 / 2048.0);
  SpaceTimeField F(3, tg);
  for (Index j = 0; j < tg.n; ++j)
    for (int k = -3; k <= 3; ++k) F.physical(j, F.col(k)) = cplx(1.0, 0.5 * k);
  for (double t : {1.0, 0.3, 0.7001}) {
    const SpectralField u = duhamel_apply(F, t);
    for (int k = -3; k <= 3; ++k) {
      const cplx c(1.0, 0.5 * k);
      const double kk = double(k * k);
      const cplx want = k == 0 ? c * t : c * (1.0 - std::polar(1.0, -kk * t)) / cplx(0.0, kk);
      CHECK(std::abs(u(k) - want) < 1e-5);
    }
  }
}

TEST_CASE("Duhamel output solves the forced linear equation") {
  const double h = 1.0 / 4096.0;
  const TimeGrid tg = UniformGrid::span(0.0, 1.0, h);
  SpaceTimeField F(2, tg);
  for (Index j = 0; j < tg.n; ++j)
    for (int k = -2; k <= 2; ++k) F.physical(j, F.col(k)) = std::polar(std::cos(3.0 * tg[j]), 0.7 * k * tg[j]);
  const SpaceTimeField U = duhamel_trajectory(F);
  double worst = 0.0;
  for (Index j = 1; j + 1 < tg.n; j += 97)
    for (int k = -2; k <= 2; ++k) {
      const cplx du = (U.physical(j + 1, U.col(k)) - U.physical(j - 1, U.col(k))) / (2.0 * h);
      const cplx lhs = du + cplx(0.0, double(k * k)) * U.physical(j, U.col(k));
      worst = std::max(worst, std::abs(lhs - F.physical(j, F.col(k))));
    }
  CHECK(worst < 1e-5);
}

TEST_CASE("time grid preconditions") {
  SpaceTimeField F(1, UniformGrid::span(0.5, 1.0, 0.1));
  CHECK_THROWS_AS(duhamel_apply(F, 0.7), InvalidArgument);
  SpaceTimeField G(1, UniformGrid::symmetric(1.0, 0.1));
  CHECK_THROWS_AS(truncated_duhamel(G), InvalidArgument);
  CHECK_THROWS_AS(duhamel_apply(G, 3.0), InvalidArgument);
}

TEST_CASE("resonant integrals split the Duhamel term") {
  const TimeGrid tg = UniformGrid::symmetric(3.0, 1.0 / 512.0);
  const Trio t = single_mode_trio(tg);
  const Multiplier M = Multiplier::unit(3);
  for (bool truncated : {false, true}) {
    const SpaceTimeField IC = ic_apply(TripleClass::N, t.v1, t.v2, t.v3, M, truncated);
    const SpaceTimeField one = resonant_duhamel(TripleClass::N, t.v1, t.v2, t.v3, M, [](double) { return cplx(1.0); },
                                                truncated);
    const SpaceTimeField EY = EY_apply(TripleClass::N, t.v1, t.v2, t.v3, M, truncated);
    const SpaceTimeField EX = resonant_duhamel(
        TripleClass::N, t.v1, t.v2, t.v3, M, [](double x) { return 1.0 - default_eta().time(x); }, truncated);
    const double scale = IC.physical.cwiseAbs().maxCoeff();
    CHECK(scale > 0.1);
    CHECK((one.physical - IC.physical).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    CHECK((EY.physical + EX.physical - IC.physical).cwiseAbs().maxCoeff() <= 1e-8 * scale);
  }
  CHECK_THROWS_AS(EY_apply(TripleClass::H, t.v1, t.v2, t.v3, M, true), InvalidArgument);
}

TEST_CASE("time-domain Duhamel matches the frequency kernel K") {
  const TimeGrid tg = UniformGrid::symmetric(2.0, 1.0 / 1024.0);
  const double D = -2.0;
  const int k = 1;
  SpaceTimeField F(2, tg);
  for (Index j = 0; j < tg.n; ++j) {
    const double s = tg[j];
    F.physical(j, F.col(k)) = std::polar(std::exp(-3.0 * s * s), (D - k * k) * s);
  }
  const LambdaGrid lg{-6.0, 1.0, 13};
  const SpaceTimeField It = twist(truncated_duhamel(F), lg);
  for (Index m = 0; m < lg.n; m += 3) {
    const cplx want = apply_kernel([](double l, double s) { return kernel_K(l, s); }, lg[m], D);
    CHECK(std::abs(It.twisted(m, It.col(k)) - want) <= 1e-4);
  }
}

TEST_CASE("time-domain E^Y matches the frequency kernel K^Y") {
  const TimeGrid tg = UniformGrid::symmetric(3.0, 1.0 / 1024.0);
  const Trio t = single_mode_trio(tg);
  const LambdaGrid lg{-8.0, 1.0, 17};
  const SpaceTimeField EY = twist(EY_apply(TripleClass::N, t.v1, t.v2, t.v3, Multiplier::unit(3), true), lg);
  const double D = -2.0;
  for (Index m = 0; m < lg.n; m += 4) {
    const cplx want = apply_kernel([D](double l, double s) { return kernel_KY(l, s, D); }, lg[m], D);
    CHECK(std::abs(EY.twisted(m, EY.col(1)) - want) <= 1e-4);
  }
}

TEST_CASE("X0 + X+ reassembles the whole E^X") {
  const TimeGrid tg = UniformGrid::symmetric(3.0, 1.0 / 512.0);
  const Trio t = single_mode_trio(tg);
  const Multiplier M = Multiplier::unit(3);
  XSplitOptions o;
  o.lambda = LambdaGrid{-8.0, 2.0, 9};
  const auto [X0, Xp] = EX_split(TripleClass::N, t.v1, t.v2, t.v3, M, o);
  const SpaceTimeField whole =
      twist(EX_apply(TripleClass::N, t.v1, t.v2, t.v3, M, XSplit::Whole), LambdaGrid{-8.0, 1.0, 17});
  bool both_nonzero = false;
  for (Index m = 0; m < o.lambda.n; ++m) {
    const cplx sum = X0.twisted(m, X0.col(1)) + Xp.twisted(m, Xp.col(1));
    CHECK(std::abs(sum - whole.twisted(2 * m, whole.col(1))) <= 1e-4);
    both_nonzero |= std::abs(X0.twisted(m, X0.col(1))) > 1e-6 && std::abs(Xp.twisted(m, Xp.col(1))) > 1e-6;
  }
  CHECK(both_nonzero);
}

TEST_CASE("localization gain is positive for Duhamel-generated data") {
  const TimeGrid tg = UniformGrid::symmetric(4.0, 1.0 / 256.0);
  SpaceTimeField F(2, tg);
  for (Index j = 0; j < tg.n; ++j)
    for (int k = -2; k <= 2; ++k) F.physical(j, F.col(k)) = cplx(1.0, 0.3 * k) * std::cos(2.0 * tg[j] + k);
  const SpaceTimeField u = truncated_duhamel(F);
  const GainFit fit = localization_gain_probe(u, {0.5, 0.25, 0.125, 0.0625, 0.03125}, 4.0, 0.01);
  CHECK(fit.ratio.size() == 5);
  CHECK(fit.theta > 0.0);

  SpaceTimeField bad = u;
  for (Index j = 0; j < tg.n; ++j) bad.physical(j, bad.col(0)) += cutoff_phi(tg[j]);
  CHECK_THROWS_AS(localization_gain_probe(bad, {0.5, 0.25}, 4.0, 0.01), InvalidArgument);
}

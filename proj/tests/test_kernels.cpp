#include <cmath>

#include "doctest.h"
#include "dnls/kernels.hpp"

using namespace dnls;

TEST_CASE("K at the origin is stable under quadrature refinement") {
  const cplx coarse = kernel_K(0.0, 0.0);
  KernelOptions fine;
  fine.panel = 0.5;
  fine.order = 16;
  fine.pv.h0 = 0.05;
  const cplx refined = kernel_K(0.0, 0.0, fine);
  CHECK(std::isfinite(std::abs(coarse)));
  CHECK(std::abs(coarse - refined) <= 1e-6);
}

TEST_CASE("kernel pieces assemble consistently") {
  for (double l : {-7.0, 0.0, 2.5}) {
    for (double s : {-3.0, 0.5, 9.0}) {
      const KernelPieces kp = kernel_pieces(l, s, 10.0);
      CHECK(std::abs(kp.K() - (kp.KY() + kp.KX())) <= 1e-14);
      CHECK(std::abs(kp.KX() - (kp.KX0(l, s) + kp.KXplus(l, s))) <= 1e-14);
      CHECK(std::abs(kp.K() - kernel_K(l, s)) <= 1e-12);
      CHECK(std::abs(kp.KY() - kernel_KY(l, s, 10.0)) <= 1e-12);
      CHECK(std::abs(kp.near - kernel_near(l, s, 10.0)) <= 1e-12);
    }
  }
}

TEST_CASE("X0 indicator assignment") {
  KernelPieces kp;
  kp.A = 1.0;
  kp.AY = 0.25;
  kp.BY = 0.5;
  kp.P = 2.0;
  kp.near = 0.125;
  kp.delta = 10.0;
  // <sigma> >= <Delta> and <lambda - sigma> >= <sigma - Delta>: every X0 piece.
  CHECK(kp.KX0(-20.0, 12.0) == kp.S3() + kp.S1near() + kp.S2());
  // Neither condition.
  CHECK(kp.KX0(5.0, 4.0) == cplx(0.0));
  // Only the second.
  CHECK(kp.KX0(-20.0, 2.0) == kp.S2());
}

TEST_CASE("bounds fit with finite constants on a small grid") {
  const auto pts = symmetric_points(24.0, 4.0);
  const KernelGrid g = evaluate_kernel_grid(pts, pts, {8.0});
  for (KernelBound b : {KernelBound::K, KernelBound::KY, KernelBound::KX, KernelBound::KYSimplified,
                        KernelBound::KX0, KernelBound::KXPlus}) {
    const BoundFit f = fit_bound(g, b, 0, 4);
    CHECK(f.points > 0);
    CHECK(std::isfinite(f.constant));
    CHECK(f.constant > 0.0);
    CHECK(f.rhs_zero_nonzero_lhs == 0);
  }
}

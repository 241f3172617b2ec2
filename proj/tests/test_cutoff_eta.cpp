#include <cmath>

#include "doctest.h"
#include "dnls/cutoff.hpp"
#include "dnls/eta.hpp"

using namespace dnls;

namespace {

// Dawson's integral from its Maclaurin series; accurate for |z| <= 3 in double precision.
double dawson(double z) {
  double term = z, sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -2.0 * z * z / double(2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// PV int e^{-u^2} / (z - u) du = 2 sqrt(pi) F(z).
double gaussian_hilbert_oracle(double z) { return 2.0 * std::sqrt(M_PI) * dawson(z); }

// Composite Simpson on [0, 2] for the even bump phi; independent of the library's rules.
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("cutoff phi values") {
  CHECK(cutoff_phi(0.0) == 1.0);
  CHECK(cutoff_phi(1.0) == 1.0);
  CHECK(cutoff_phi(-0.7) == 1.0);
  CHECK(cutoff_phi(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_phi(2.0) == 0.0);
  CHECK(cutoff_phi(-3.0) == 0.0);
  CHECK(smooth_step(0.25) + smooth_step(0.75) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cutoff transform tables match direct quadrature") {
  const auto& phi = phi_transform();
  for (double xi : {0.0, 0.3, 1.0, 2.7, 10.0, 31.5}) {
    const double hat = simpson([&](double t) { return cutoff_phi(t) * std::cos(xi * t); }, 0.0, 2.0, 20000) / M_PI;
    const double hil = simpson([&](double t) { return cutoff_phi(t) * std::sin(xi * t); }, 0.0, 2.0, 20000);
    CHECK(std::abs(phi.hat(xi) - hat) < 1e-10);
    CHECK(std::abs(phi.hat_direct(xi) - hat) < 1e-10);
    CHECK(std::abs(phi.hilbert_hat(xi) - hil) < 1e-10);
    CHECK(phi.hat(-xi) == phi.hat(xi));
    CHECK(phi.hilbert_hat(-xi) == -phi.hilbert_hat(xi));
  }
  // Unit mass: phi^(0) = (1/2pi) int phi.
  CHECK(phi.hat(0.0) * 2.0 * M_PI == doctest::Approx(simpson(cutoff_phi, -2.0, 2.0, 40000)).epsilon(1e-12));
}

TEST_CASE("scaled cutoff profile") {
  const CutoffProfile p(0.25);
  CHECK(p(0.3) == cutoff_phi(1.2));
  CHECK(p.hat(3.0) == doctest::Approx(0.25 * phi_transform().hat(0.75)).epsilon(1e-15));
  CHECK(p.hilbert_hat(3.0) == doctest::Approx(0.25 * phi_transform().hilbert_hat(0.75)).epsilon(1e-15));
}

TEST_CASE("Gaussian Hilbert transform matches Dawson's integral") {
  for (double z : {0.0, 0.2, 0.5, 1.0, 1.7, 2.5, 3.0}) {
    CHECK(std::abs(gaussian_hilbert(z) - gaussian_hilbert_oracle(z)) < 1e-10);
    CHECK(gaussian_hilbert(-z) == doctest::Approx(-gaussian_hilbert(z)));
  }
  // Far tail: sqrt(pi) / z (1 + 1/(2 z^2) + 3/(4 z^4)).
  const double z = 60.0;
  CHECK(gaussian_hilbert(z) == doctest::Approx(std::sqrt(M_PI) / z * (1 + 0.5 / (z * z) + 0.75 / std::pow(z, 4))).epsilon(1e-10));
}

TEST_CASE("eta profile normalization holds to 1e-8") {
  const EtaProfile& eta = default_eta();
  CHECK(std::abs(eta.hat(1.0)) <= 1e-8);
  CHECK(std::abs(eta.hilbert_hat(1.0) - 1.0) <= 1e-8);

  // Independent reconstruction from the Gaussian model and Dawson's integral.
  double hat = 0.0, hil = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double z = (1.0 - eta.centers[j]) / eta.width;
    hat += eta.coef[j] * std::exp(-z * z);
    hil += eta.coef[j] * gaussian_hilbert_oracle(z);
  }
  CHECK(std::abs(hat) <= 1e-8);
  CHECK(std::abs(hil - 1.0) <= 1e-8);
}

TEST_CASE("eta time profile is the inverse transform of eta hat") {
  const EtaProfile& eta = default_eta();
  for (double tau : {0.0, 0.4, -1.3, 5.0}) {
    cplx want = 0;
    for (int j = 0; j < 2; ++j)
      want += eta.coef[j] * eta.width * std::sqrt(M_PI) *
              std::exp(-0.25 * eta.width * eta.width * tau * tau) * std::polar(1.0, eta.centers[j] * tau);
    CHECK(std::abs(eta.time(tau) - want) < 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("eta hat has Gaussian decay") {
  const EtaProfile& eta = default_eta();
  // Fit log|eta^(xi)| against xi^2 on [4, 8]; the slope must be negative.  The centre shift
  // adds a linear term, so only the sign is compared.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double xi = 4.0; xi <= 8.0; xi += 0.5) {
    const double x = xi * xi, y = std::log(std::abs(eta.hat(xi)));
    sx += x; sy += y; sxx += x * x; sxy += x * y; ++n;
  }
  const double c = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(c > 0.0);
}

#include "dnls/eta.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace dnls {

namespace {

constexpr double kTableEnd = 40.0;
constexpr double kTableStep = 1.0 / 128.0;
const double kSqrtPi = std::sqrt(M_PI);

const UniformTable& h0_table() {
  static const UniformTable table = [] {
    const Index n = Index(std::llround(kTableEnd / kTableStep)) + 1;
    std::vector<double> v(n);
    for (Index j = 0; j < n; ++j) v[j] = gaussian_hilbert_pv(double(j) * kTableStep);
    return UniformTable(0.0, kTableStep, std::move(v));
  }();
  return table;
}

double h0_asymptotic(double z) {
  const double r = 1.0 / (z * z);
  return kSqrtPi / z * (1.0 + r * (0.5 + r * (0.75 + r * (1.875 + r * 6.5625))));
}

}  // namespace

double gaussian_hilbert_pv(double z) {
  // (z - u) = -(u - z): negate the standard principal value.
  PVOptions opt;
  auto f = [](double u) { return cplx(std::exp(-u * u), 0.0); };
  return -pv_integral(f, -9.0, 9.0, z, opt).value.real();
}

double gaussian_hilbert(double z) {
  const double a = std::abs(z);
  const double v = a > kTableEnd ? h0_asymptotic(a) : h0_table()(a);
  return z < 0 ? -v : v;
}

double EtaProfile::hat(double xi) const {
  double s = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double u = (xi - centers[j]) / width;
    s += coef[j] * std::exp(-u * u);
  }
  return s;
}

double EtaProfile::hilbert_hat(double x) const {
  // H[g((. - c)/w)](x) = h0((x - c)/w): the width cancels.
  double s = 0.0;
  for (int j = 0; j < 2; ++j) s += coef[j] * gaussian_hilbert((x - centers[j]) / width);
  return s;
}

cplx EtaProfile::time(double tau) const {
  const double env = width * kSqrtPi * std::exp(-0.25 * width * width * tau * tau);
  cplx s{};
  for (int j = 0; j < 2; ++j) s += coef[j] * std::polar(env, centers[j] * tau);
  return s;
}

EtaProfile build_eta(std::array<double, 2> centers, double width) {
  if (!(width > 0.0)) throw InvalidArgument("build_eta: width must be positive");
  EtaProfile eta;
  eta.centers = centers;
  eta.width = width;

  Eigen::Matrix2d A;
  for (int j = 0; j < 2; ++j) {
    const double u = (1.0 - centers[j]) / width;
    A(0, j) = std::exp(-u * u);
    A(1, j) = gaussian_hilbert_pv(u);
  }
  const double scale = A.cwiseAbs().maxCoeff();
  if (!(std::abs(A.determinant()) > 1e-10 * scale * scale))
    throw InvalidArgument("build_eta: Gaussian centers give a singular constraint system");
  const Eigen::Vector2d c = A.fullPivLu().solve(Eigen::Vector2d(0.0, 1.0));
  eta.coef = {c[0], c[1]};

  eta.hat_residual = std::abs(eta.hat(1.0));
  // Re-evaluate H eta^(1) on the assembled profile rather than reusing the matrix entries.
  const double lo = std::min(centers[0], centers[1]) - 9.0 * width;
  const double hi = std::max(centers[0], centers[1]) + 9.0 * width;
  PVOptions opt;
  opt.tolerance = 1e-9;
  opt.panel = 0.5 * width;
  opt.h0 = 0.1 * width;
  const double h1 =
      -pv_integral([&](double x) { return cplx(eta.hat(x), 0.0); }, lo, hi, 1.0, opt).value.real();
  eta.hilbert_residual = std::abs(h1 - 1.0);
  return eta;
}

const EtaProfile& default_eta() {
  static const EtaProfile eta = build_eta();
  return eta;
}

}  // namespace dnls

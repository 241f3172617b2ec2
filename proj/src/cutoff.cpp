#include "dnls/cutoff.hpp"

#include <cmath>

namespace dnls {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // 1 / (1 + e^{1/x - 1/(1-x)}); the exponent saturates harmlessly to 0 or inf.
  return 1.0 / (1.0 + std::exp(1.0 / x - 1.0 / (1.0 - x)));
}

double smooth_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double s = smooth_step(x);
  return (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x))) * s * (1.0 - s);
}

double cutoff_phi(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return 1.0 - smooth_step(a - 1.0);
}

double cutoff_phi_derivative(double t) {
  const double a = std::abs(t);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  const double d = -smooth_step_derivative(a - 1.0);
  return t < 0 ? -d : d;
}

namespace {

GaussRule composite_rule(double a, double b, double panel, int order) {
  const GaussRule& g = gauss_legendre(order);
  const int np = std::max(1, int(std::ceil((b - a) / panel)));
  const double h = (b - a) / np;
  GaussRule out;
  for (int p = 0; p < np; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      out.x.push_back(mid + 0.5 * h * g.x[i]);
      out.w.push_back(0.5 * h * g.w[i]);
    }
  }
  return out;
}

}  // namespace

BumpTransform::BumpTransform(double plateau, double support, std::function<double(double)> value,
                             std::function<double(double)> derivative, double extent, double step)
    : plateau_(plateau),
      support_(support),
      extent_(extent),
      value_(std::move(value)),
      derivative_(std::move(derivative)) {
  if (!(plateau > 0.0) || !(support > plateau))
    throw InvalidArgument("BumpTransform: need 0 < plateau < support");
  nodes_ = composite_rule(plateau, support, 1.0 / 64.0, 16);
  std::vector<double> fw(nodes_.x.size());
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] = nodes_.w[i] * derivative_(nodes_.x[i]);

  const Index n = Index(std::llround(extent / step)) + 1;
  std::vector<double> hv(n), hh(n);
  constexpr Index block = 64;
  std::vector<cplx> z(fw.size()), rot(fw.size());
  for (Index j0 = 0; j0 < n; j0 += block) {
    const double x0 = double(j0) * step;
    for (std::size_t i = 0; i < fw.size(); ++i) {
      z[i] = std::polar(1.0, x0 * nodes_.x[i]);
      rot[i] = std::polar(1.0, step * nodes_.x[i]);
    }
    for (Index j = j0; j < std::min(n, j0 + block); ++j) {
      const double x = double(j) * step;
      if (x < 1.0) {
        hv[j] = hat_direct(x);
        hh[j] = hilbert_hat_direct(x);
      } else {
        double s_hat = 0.0, s_hil = 0.0;
        for (std::size_t i = 0; i < fw.size(); ++i) {
          s_hat += fw[i] * z[i].imag();
          s_hil += fw[i] * (1.0 - z[i].real());
        }
        hv[j] = -s_hat / (M_PI * x);
        hh[j] = -s_hil / x;
      }
      for (std::size_t i = 0; i < fw.size(); ++i) z[i] *= rot[i];
    }
  }
  hat_table_ = UniformTable(0.0, step, std::move(hv));
  hilbert_table_ = UniformTable(0.0, step, std::move(hh));
}

double BumpTransform::hat_direct(double xi) const {
  // hat = -(1/pi) int f'(t) t sinc(xi t) dt
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.x.size(); ++i) {
    const double t = nodes_.x[i], a = xi * t;
    const double sinc = std::abs(a) < 1e-8 ? 1.0 - a * a / 6.0 : std::sin(a) / a;
    s += nodes_.w[i] * derivative_(t) * t * sinc;
  }
  return -s / M_PI;
}

double BumpTransform::hilbert_hat_direct(double x) const {
  // H hat = -int f'(t) (1 - cos(x t)) / x dt = -int f'(t) 2 sin^2(x t / 2) / x dt
  if (x == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.x.size(); ++i) {
    const double t = nodes_.x[i], h = std::sin(0.5 * x * t);
    s += nodes_.w[i] * derivative_(t) * 2.0 * h * h;
  }
  return -s / x;
}

double BumpTransform::hat(double xi) const {
  const double x = std::abs(xi);
  return x > extent_ ? 0.0 : hat_table_(x);
}

double BumpTransform::hilbert_hat(double x) const {
  const double a = std::abs(x);
  const double v = a > extent_ ? 1.0 / a : hilbert_table_(a);
  return x < 0 ? -v : v;
}

const BumpTransform& phi_transform() {
  static const BumpTransform phi(1.0, 2.0, [](double t) { return cutoff_phi(t); },
                                 [](double t) { return cutoff_phi_derivative(t); });
  return phi;
}

CutoffProfile::CutoffProfile(double T) : T_(T), base_(&phi_transform()) {
  if (!(T > 0.0)) throw InvalidArgument("CutoffProfile: scale T must be positive");
}

}  // namespace dnls

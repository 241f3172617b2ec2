#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "dnls/fields.hpp"

namespace dnls {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with panels of width <= panel.
template <typename F>
auto integrate(F&& f, double a, double b, double panel, int order = 8) -> decltype(f(a)) {
  using R = decltype(f(a));
  R sum{};
  if (b <= a) return sum;
  const GaussRule& g = gauss_legendre(order);
  const int np = std::max(1, int(std::ceil((b - a) / panel)));
  const double h = (b - a) / np;
  for (int p = 0; p < np; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    R part{};
    for (std::size_t i = 0; i < g.x.size(); ++i) part += g.w[i] * f(mid + half * g.x[i]);
    sum += half * part;
  }
  return sum;
}

/// Principal value of  int_a^b f(mu) / (mu - pole) dmu  with a < pole < b allowed.
///
/// Symmetric excision |mu - pole| < h folds the two sides into
/// int_h^m [f(pole+u) - f(pole-u)]/u du; the excised piece is odd in h, so the
/// values at h = h0, h0/2, h0/4, h0/8 are combined to cancel h, h^3 and h^5.
struct PVOptions {
  double h0 = 0.1;
  double panel = 0.5;
  int order = 8;
  double tolerance = 1e-7;  // allowed spread between the two finest extrapolants
};

struct PVResult {
  std::complex<double> value;
  double spread = 0.0;  // disagreement between 3-level and 4-level extrapolation
};

PVResult pv_integral(const std::function<std::complex<double>(double)>& f, double a, double b,
                     double pole, const PVOptions& opt = {});

/// Tabulated function on a uniform grid with local 6-point Lagrange interpolation.
class UniformTable {
 public:
  UniformTable() = default;
  UniformTable(double x0, double h, std::vector<double> values)
      : x0_(x0), h_(h), v_(std::move(values)) {}
  double operator()(double x) const;
  double x0() const { return x0_; }
  double step() const { return h_; }
  double x_end() const { return x0_ + h_ * double(v_.size() - 1); }
  bool covers(double x) const { return x >= x0_ && x <= x_end(); }
  const std::vector<double>& values() const { return v_; }

 private:
  double x0_ = 0.0, h_ = 1.0;
  std::vector<double> v_;
};

/// Complex counterpart of UniformTable.
class ComplexTable {
 public:
  ComplexTable() = default;
  ComplexTable(double x0, double h, std::vector<cplx> values)
      : x0_(x0), h_(h), v_(std::move(values)) {}
  cplx operator()(double x) const;
  double x0() const { return x0_; }
  double step() const { return h_; }
  double x_end() const { return x0_ + h_ * double(v_.size() - 1); }
  bool covers(double x) const { return !v_.empty() && x >= x0_ && x <= x_end(); }

 private:
  double x0_ = 0.0, h_ = 1.0;
  std::vector<cplx> v_;
};

/// Bluestein chirp-z transform:
///   y_m = sum_j x_j exp(sign * i * (w0 + m*dw) * (s0 + j*ds)),  m = 0..M-1.
std::vector<cplx> chirp_z(const std::vector<cplx>& x, double s0, double ds, double w0, double dw,
                          Index M, int sign);

}  // namespace dnls

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <string>

#include "dnls/errors.hpp"

namespace dnls {

using cplx = std::complex<double>;
using Index = Eigen::Index;

/// Uniform sample points x_j = start + j*step, j = 0..n-1.
struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  Index n = 0;

  double operator[](Index j) const { return start + double(j) * step; }
  double back() const { return (*this)[n - 1]; }
  double extent() const { return std::max(std::abs(start), std::abs(back())); }

  // Index of the sample closest to x; the caller checks the distance.
  Index nearest(double x) const {
    return static_cast<Index>(std::llround((x - start) / step));
  }
  bool has_point(double x, double tol = 1e-9) const {
    const Index j = nearest(x);
    return j >= 0 && j < n && std::abs((*this)[j] - x) <= tol * step;
  }

  // Grid on [-half_width, half_width] whose middle sample is exactly 0.
  static UniformGrid symmetric(double half_width, double step) {
    if (!(step > 0.0) || !(half_width >= 0.0))
      throw InvalidArgument("symmetric grid needs step > 0 and half_width >= 0");
    const Index m = static_cast<Index>(std::llround(half_width / step));
    return UniformGrid{-double(m) * step, step, 2 * m + 1};
  }
  // Grid from a to b inclusive with the given step; b - a must be a multiple of step.
  static UniformGrid span(double a, double b, double step) {
    if (!(step > 0.0) || b < a) throw InvalidArgument("span grid needs step > 0 and b >= a");
    const Index m = static_cast<Index>(std::llround((b - a) / step));
    return UniformGrid{a, step, m + 1};
  }
};

using TimeGrid = UniformGrid;
using LambdaGrid = UniformGrid;

inline bool operator==(const UniformGrid& a, const UniformGrid& b) {
  return a.start == b.start && a.step == b.step && a.n == b.n;
}

/// Truncated Fourier series  u(x) = sum_{|k| <= n_max} u_k e^{ikx}.
template <typename Real>
class BasicSpectralField {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicSpectralField() = default;
  explicit BasicSpectralField(int n_max) : n_max_(n_max), modes_(Vector::Zero(2 * Index(n_max) + 1)) {
    if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  }
  BasicSpectralField(int n_max, Vector modes) : n_max_(n_max), modes_(std::move(modes)) {
    if (modes_.size() != 2 * Index(n_max) + 1)
      throw InvalidArgument("mode vector length must be 2*n_max+1");
  }

  static BasicSpectralField single_mode(int n_max, int k, Scalar a) {
    BasicSpectralField f(n_max);
    f.at(k) = a;
    return f;
  }

  int n_max() const { return n_max_; }
  Index size() const { return modes_.size(); }
  bool in_band(long long k) const { return k >= -n_max_ && k <= n_max_; }

  Scalar& operator()(int k) { return modes_[Index(k) + n_max_]; }
  const Scalar& operator()(int k) const { return modes_[Index(k) + n_max_]; }
  Scalar& at(int k) {
    if (!in_band(k)) throw InvalidArgument("mode index outside [-n_max, n_max]");
    return (*this)(k);
  }
  const Scalar& at(int k) const {
    if (!in_band(k)) throw InvalidArgument("mode index outside [-n_max, n_max]");
    return (*this)(k);
  }
  // Zero outside the band, which is what the truncated convolution sums want.
  Scalar get(long long k) const { return in_band(k) ? (*this)(int(k)) : Scalar(0); }

  Vector& modes() { return modes_; }
  const Vector& modes() const { return modes_; }

  BasicSpectralField& operator+=(const BasicSpectralField& o) { check(o); modes_ += o.modes_; return *this; }
  BasicSpectralField& operator-=(const BasicSpectralField& o) { check(o); modes_ -= o.modes_; return *this; }
  BasicSpectralField& operator*=(Scalar c) { modes_ *= c; return *this; }
  friend BasicSpectralField operator+(BasicSpectralField a, const BasicSpectralField& b) { return a += b; }
  friend BasicSpectralField operator-(BasicSpectralField a, const BasicSpectralField& b) { return a -= b; }
  friend BasicSpectralField operator*(Scalar c, BasicSpectralField a) { return a *= c; }

 private:
  void check(const BasicSpectralField& o) const {
    if (o.n_max_ != n_max_) throw InvalidArgument("fields have different n_max");
  }
  int n_max_ = 0;
  Vector modes_;
};

using SpectralField = BasicSpectralField<double>;

/// Spectral field sampled on a uniform time grid.  The physical block holds
/// u_k(t_j) as rows j, columns k + n_max.  The twisted block holds
/// u~(k, lambda_m) = F_t[e^{i k^2 t} u_k(t)](lambda_m) on a lambda grid.
template <typename Real>
struct BasicSpaceTimeField {
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int n_max = 0;
  TimeGrid time;
  Matrix physical;
  LambdaGrid lambda;
  Matrix twisted;
  // Declared accuracy of the twisted block relative to the physical one.
  double quadrature_tol = 0.0;

  BasicSpaceTimeField() = default;
  BasicSpaceTimeField(int n_max_, const TimeGrid& grid)
      : n_max(n_max_), time(grid), physical(Matrix::Zero(grid.n, 2 * Index(n_max_) + 1)) {}

  static BasicSpaceTimeField twisted_only(int n_max_, const LambdaGrid& lg) {
    BasicSpaceTimeField f;
    f.n_max = n_max_;
    f.lambda = lg;
    f.twisted = Matrix::Zero(lg.n, 2 * Index(n_max_) + 1);
    return f;
  }

  bool has_physical() const { return physical.size() > 0; }
  bool has_twisted() const { return twisted.size() > 0; }
  Index modes() const { return 2 * Index(n_max) + 1; }
  Index col(int k) const { return Index(k) + n_max; }

  BasicSpectralField<Real> slice(Index j) const {
    require_physical();
    return BasicSpectralField<Real>(n_max, physical.row(j).transpose());
  }
  void set_slice(Index j, const BasicSpectralField<Real>& f) {
    require_physical();
    if (f.n_max() != n_max) throw InvalidArgument("slice n_max mismatch");
    physical.row(j) = f.modes().transpose();
  }
  void require_physical() const {
    if (!has_physical()) throw StateError("field has no physical-time representation");
  }
  void require_twisted() const {
    if (!has_twisted()) throw StateError("field has no twisted representation");
  }
};

using SpaceTimeField = BasicSpaceTimeField<double>;

inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace dnls

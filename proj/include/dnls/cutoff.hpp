#pragma once

#include <functional>

#include "dnls/quadrature.hpp"

namespace dnls {

/// Smooth step s(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}), 0 for x <= 0 and 1 for x >= 1.
double smooth_step(double x);
double smooth_step_derivative(double x);

/// phi(t) = 1 on |t| <= 1, 0 on |t| >= 2, 1 - s(|t| - 1) in between.
double cutoff_phi(double t);
double cutoff_phi_derivative(double t);

/// Fourier data of an even bump f with f = 1 on [0, plateau] and f = 0 beyond support.
///
///   hat(xi)         = (1/2pi) int f(t) e^{-i xi t} dt
///   hilbert_hat(x)  = PV int hat(y) / (x - y) dy = int_0^support f(t) sin(x t) dt
///
/// Both are tabulated on [0, extent] from the derivative of f on the transition
/// band (integration by parts keeps large-xi values free of cancellation) and
/// read back with 6-point interpolation.  Past the table hat is taken as 0 and
/// hilbert_hat as 1/x, which is exact up to the super-polynomial tail of hat.
class BumpTransform {
 public:
  BumpTransform(double plateau, double support, std::function<double(double)> value,
                std::function<double(double)> derivative, double extent = 512.0,
                double step = 1.0 / 64.0);

  double value(double t) const { return value_(std::abs(t)); }
  double hat(double xi) const;
  double hilbert_hat(double x) const;
  double extent() const { return extent_; }
  double plateau() const { return plateau_; }
  double support() const { return support_; }

  // Direct quadrature, bypassing the tables (used to validate them).
  double hat_direct(double xi) const;
  double hilbert_hat_direct(double x) const;

 private:
  double plateau_, support_, extent_;
  std::function<double(double)> value_, derivative_;
  GaussRule nodes_;  // nodes and weights on [plateau, support]
  UniformTable hat_table_, hilbert_table_;
};

/// The shared transform of phi (tables built once per process).
const BumpTransform& phi_transform();

/// phi_T(t) = phi(t / T) with hat(xi) = T phi^(T xi) and hilbert_hat(x) = T (H phi^)(T x).
class CutoffProfile {
 public:
  explicit CutoffProfile(double T = 1.0);
  double scale() const { return T_; }
  double operator()(double t) const { return cutoff_phi(t / T_); }
  double hat(double xi) const { return T_ * base_->hat(T_ * xi); }
  double hilbert_hat(double x) const { return T_ * base_->hilbert_hat(T_ * x); }

 private:
  double T_;
  const BumpTransform* base_;
};

}  // namespace dnls

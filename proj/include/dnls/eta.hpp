#pragma once

#include <array>

#include "dnls/quadrature.hpp"

namespace dnls {

/// h0(z) = PV int e^{-u^2} / (z - u) du, the Hilbert transform of a unit Gaussian.
/// Tabulated from principal-value quadrature on [0, 40] (odd extension) with an
/// asymptotic series beyond.
double gaussian_hilbert(double z);
/// The same quantity by a direct principal-value quadrature (slow).
double gaussian_hilbert_pv(double z);

/// Schwartz profile with eta^(1) = 0 and (H eta^)(1) = 1, modelled as
///   eta^(xi) = sum_j coef_j exp(-((xi - c_j) / w)^2).
struct EtaProfile {
  std::array<double, 2> centers{0.5, 1.5};
  double width = 0.5;
  std::array<double, 2> coef{0.0, 0.0};
  double hat_residual = 0.0;      // |eta^(1)|
  double hilbert_residual = 0.0;  // |H eta^(1) - 1|

  double hat(double xi) const;
  double hilbert_hat(double x) const;
  /// eta(tau) = int eta^(xi) e^{i xi tau} d xi
  cplx time(double tau) const;

  /// Fourier data of t -> eta(D t):  eta^(mu/D)/|D|  and its Hilbert transform H eta^(mu/D)/D.
  double scaled_hat(double mu, double D) const { return hat(mu / D) / std::abs(D); }
  double scaled_hilbert(double mu, double D) const { return hilbert_hat(mu / D) / D; }
};

/// Solve the 2x2 system for the coefficients, with the Hilbert transforms of the
/// two Gaussians at 1 taken from principal-value quadrature.
EtaProfile build_eta(std::array<double, 2> centers = {0.5, 1.5}, double width = 0.5);

/// The profile used throughout (built once).
const EtaProfile& default_eta();

}  // namespace dnls

#pragma once

#include <string>

#include "dnls/fields.hpp"

namespace dnls {

/// Settings for the integrating-factor RK4 integrator of  i u_t + u_xx = i (|u|^2 u)_x.
struct IntegratorConfig {
  int n_max = 64;
  double dt = 1e-3;
  double T = 1.0;          // may be negative to integrate backwards
  double dealias = 2.0;    // padded grid is the next power of two >= dealias * (2 n_max + 2)
  int save_every = 1;      // keep every save_every-th step (the final time is always kept)
  std::string scheme = "if-rk4";

  /// Throws InvalidArgument naming the violated bound.  Stability heuristic: |dt| n_max <= 1/2.
  void validate() const;
  Index grid_size() const;
};

/// Pseudospectral right-hand side (|u|^2 u)_x truncated to the band of u, computed on the padded
/// grid so that the cubic product is alias free on |k| <= n_max.
SpectralField dnls_nonlinearity(const SpectralField& u, Index grid);

/// Classical RK4 on w_k = e^{ik^2 t} u_k.  The result holds u at the saved times.
/// Throws NumericError if the l2 norm exceeds 1e6 (diagnostics carry the last stable time).
SpaceTimeField integrate_dnls(const SpectralField& u0, const IntegratorConfig& cfg);

/// Iterates u^{n+1} = e^{it d_x^2} u0 + I[(|u^n|^2 u^n)_x] on the grid [0, T] with step dt,
/// starting from the free evolution.  Throws DivergenceError when the sup norm of successive
/// differences doubles.  `history` (optional) receives the sup differences.
SpaceTimeField picard_iterate_integral(const SpectralField& u0, int n_iter, const IntegratorConfig& cfg,
                                       std::vector<double>* history = nullptr);

/// a e^{i(kx + (k|a|^2 - k^2) t)} as a single-mode field in the band n_max.
SpectralField exact_plane_wave(cplx a, int k, double t, int n_max);

/// P0 |u|^2 = sum_k |u_k|^2 and the l2 norm of the coefficients.
double mass(const SpectralField& u);
double sup_norm(const SpectralField& u);

}  // namespace dnls

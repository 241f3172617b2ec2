#pragma once

#include <iosfwd>

#include "dnls/fields.hpp"

namespace dnls {

/// Phase data of the gauge: mu = P0 |u(0)|^2 and, per time slice, the real mean-free
/// G = d_x^{-1} P_{!=0} |u|^2 (stored as a spectral field on the band 2 n_max).
struct GaugeRecord {
  double mu = 0.0;
  SpaceTimeField G;
};

struct GaugeDiagnostics {
  double max_mean_drift = 0.0;       // max_t |P0 |u(t)|^2 - mu|
  double max_dealias_residual = 0.0; // largest l2 share of e^{-iG} u falling outside the band
  double max_l2_defect = 0.0;        // max_t | ||v(t)|| - ||u(t)|| | / ||u(t)||
  Index grid = 0;                    // physical grid used for the products
};

/// Physical grid used by the gauge for band n_max: a power of two >= 4 (2 n_max + 2).
Index gauge_grid(int n_max);

/// d_x^{-1} P_{!=0} |u|^2 on the band 2 n_max.
SpectralField gauge_phase(const SpectralField& u);

/// v0 = exp(-i d_x^{-1} P_{!=0} |u0|^2) u0, truncated back to the band of u0.
SpectralField gauge_data(const SpectralField& u0);

/// Per slice: multiply by e^{-iG(t)}, then translate by 2 mu t (mode k times e^{-2i mu t k}) with
/// mu frozen from the t = 0 slice, which must be on the grid.
SpaceTimeField gauge_forward(const SpaceTimeField& u, GaugeRecord* record = nullptr,
                             GaugeDiagnostics* diag = nullptr);

/// Undo the translation with mu = P0 |v(0)|^2, recompute G from |v_0|^2 and multiply by e^{+iG}.
SpaceTimeField gauge_inverse(const SpaceTimeField& v, GaugeDiagnostics* diag = nullptr);

/// Structured-text sidecar with the diagnostics.
void write_gauge_diagnostics(std::ostream& os, const GaugeDiagnostics& d, double mu);

}  // namespace dnls

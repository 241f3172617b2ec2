#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dnls/cutoff.hpp"
#include "dnls/eta.hpp"
#include "dnls/fields.hpp"
#include "dnls/interactions.hpp"
#include "dnls/kernels.hpp"

namespace dnls {

/// IF(t) = int_0^t e^{i(t-s) d_x^2} F(s) ds.  Mode k is integrated as
/// e^{-ik^2 t} int_0^t e^{ik^2 s} F_k(s) ds with the trapezoid rule on the
/// twisted integrand; a final partial step uses linear interpolation of F.
/// The time grid must contain 0 and t.
SpectralField duhamel_apply(const SpaceTimeField& F, double t);

/// IF at every sample of F's time grid (which must contain 0).
SpaceTimeField duhamel_trajectory(const SpaceTimeField& F);

/// phi(t) I(phi(s) F(s)) on F's grid, which must cover [-2, 2].
SpaceTimeField truncated_duhamel(const SpaceTimeField& F);

/// Time weight applied inside the resonant Duhamel integrals, as a function of Delta (t - s).
using ResonantWeight = std::function<cplx(double)>;

/// Trilinear resonant integral over the class `cls`:
///   out_k(t) = sum k1 M3 int_0^t e^{-i(t-s)k^2} W(Delta (t-s)) conj(v1_{k1}) v2_{k2} v3_{k3} (s) ds
/// evaluated by the trapezoid rule, one discrete convolution per (k, Delta) group (FFT based).
/// With `truncated` the first input is multiplied by phi(s) and the output by phi(t).
SpaceTimeField resonant_duhamel(TripleClass cls, const SpaceTimeField& v1, const SpaceTimeField& v2,
                                const SpaceTimeField& v3, const Multiplier& M, const ResonantWeight& W,
                                bool truncated);

/// I C_* by a direct cumulative trapezoid (no FFT), same grid conventions as resonant_duhamel.
SpaceTimeField ic_apply(TripleClass cls, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, bool truncated);

/// E^Y_* with weight eta(Delta (t - s)), eta the inverse transform of the profile's eta^.
/// Only the classes N and L are accepted.
SpaceTimeField EY_apply(TripleClass star, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, bool truncated,
                        const EtaProfile& eta = default_eta());

enum class XSplit { Whole, X0, Xplus };

struct XSplitOptions {
  LambdaGrid lambda{-8.0, 1.0, 17};  // output frequencies for X0 / Xplus
  double sigma_radius = 25.0;         // sigma window around each group's resonance
  double sigma_panel = 1.0;
  int sigma_order = 8;
  KernelOptions kernel{200.0, 1.0, 12, PVOptions{0.1, 1.0, 12, 1e-7}};
};

/// E^X_*.  Whole is the time-domain complement ic_apply - EY_apply (physical field).  X0 and
/// Xplus are truncated pieces computed on the frequency side from the split kernels and
/// returned as twisted-only fields on opts.lambda.
SpaceTimeField EX_apply(TripleClass star, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, XSplit split,
                        const XSplitOptions& opts = {}, const EtaProfile& eta = default_eta());

/// Both frequency-side pieces (X0, Xplus) from a single kernel evaluation.
std::pair<SpaceTimeField, SpaceTimeField> EX_split(TripleClass star, const SpaceTimeField& v1,
                                                   const SpaceTimeField& v2, const SpaceTimeField& v3,
                                                   const Multiplier& M, const XSplitOptions& opts = {},
                                                   const EtaProfile& eta = default_eta());

struct GainFit {
  std::vector<double> T, ratio;
  double theta = 0.0;  // least-squares slope of log ratio against log T
};

/// Ratios ||phi_T u||_{Y0} / ||u||_{Y1} over the T list and their log-log slope.
/// Requires u(0) = 0 (sup over modes below `tol` times the field's sup).
GainFit localization_gain_probe(const SpaceTimeField& u, const std::vector<double>& Ts, double p0,
                                double delta, double tol = 1e-10);

}  // namespace dnls

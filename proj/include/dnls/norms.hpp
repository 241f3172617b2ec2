#pragma once

#include <limits>
#include <optional>
#include <string>

#include "dnls/fields.hpp"

namespace dnls {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The exponent system of the well-posedness argument together with the ball radii.
struct ParameterLadder {
  double p0 = 4.0;
  double delta = 0.01;
  double b0 = 0.0, b1 = 0.0;
  double q0 = 0.0, q1 = 0.0;
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;
  double theta = 0.0;
  double A = 1.0, A1 = 0.0, A2 = 0.0, A3 = 0.0;
  bool radii_capped = false;  // some A_j hit the 1e6 cap

  /// Throws AssertionFailure naming the first broken relation.
  void check() const;
};

/// Derived exponents from (p0, delta); A1 = e^A, A2 = e^A1, A3 = e^A2, each capped at 1e6.
/// theta defaults to delta / 2.
ParameterLadder ladder(double p0, double delta, double A = 1.0,
                       std::optional<double> theta = std::nullopt);

/// Sobolev index with the same scaling as H^sigma_p: sigma + 1/p - 1/2.
double scaling_index(double sigma, double p);

/// Exponents of X^{s,b}_{p,q}; a spatial norm has neither b nor q.
struct NormSpec {
  double s = 0.0;
  std::optional<double> b;
  double p = 2.0;
  std::optional<double> q;
  std::string name;  // optional label used in reports

  bool spatial() const { return !b.has_value(); }
};

NormSpec space_Y0(const ParameterLadder& L);
NormSpec space_Y1(const ParameterLadder& L);
NormSpec space_Z0(const ParameterLadder& L);
NormSpec space_Z1(const ParameterLadder& L);

/// || <k>^sigma f_k ||_{l^p}, p = infinity as a supremum.
double fl_norm(const SpectralField& f, double sigma, double p);

struct XsbDetail {
  double value = 0.0;
  int tails_corrected = 0;       // number of (mode, side) tails extended by the power-law model
  int tails_non_integrable = 0;  // fitted decay too slow for L^q: correction skipped and flagged
  double tail_share = 0.0;       // largest fraction of a mode's q-th power contributed by the model
};

/// || <k>^s <lambda>^b u~(k, lambda) ||_{l^p_k L^q_lambda} on the twisted grid, trapezoid in
/// lambda plus a power-law tail model fitted on the outer tenth of each side.
XsbDetail xsb_norm_detail(const SpaceTimeField& F, const NormSpec& spec);
double xsb_norm(const SpaceTimeField& F, const NormSpec& spec);

/// Hoelder embedding X^{s,b}_{p,q} into X^{s',b'}_{p',q'}.  For the spatial pair:
/// p <= p' needs s >= s', p > p' needs s + 1/p > s' + 1/p'; likewise for (q, b).
bool embedding_holds(const NormSpec& from, const NormSpec& to);

/// Constant C with ||u||_to <= C ||u||_from whenever embedding_holds(from, to):
/// the product of the two Hoelder factors || <x>^{-(gap)} ||_{L^r} (sum over k for l^p).
double embedding_constant(const NormSpec& from, const NormSpec& to);

}  // namespace dnls

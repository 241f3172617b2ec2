#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dnls/fields.hpp"
#include "dnls/interactions.hpp"
#include "dnls/norms.hpp"

namespace dnls {

/// One line of a convergence log.  The norm columns are upper bounds computed from the
/// extension phi_T(t) f(t) of the iterate (zero when not requested).
struct IterationRecord {
  int iter = 0;
  double ratio = 0.0;     // d_n / d_{n-1}, 0 for the first step
  double residual = 0.0;  // sup-difference of successive iterates
  double z_bound = 0.0;
  double y_bound = 0.0;
};

struct ParacontrolledPair {
  SpaceTimeField w, v;
  double residual = 0.0;  // sup |v - w - E^Y_N(w, w, v) - E^Y_L(w, v, v)|
  bool converged = false;
  std::vector<IterationRecord> log;
  std::vector<double> ratios() const;
};

/// Grid on which the paracontrolled maps run for the time interval [0, T]: the symmetric grid
/// over [-2T, 2T] with T / steps_per_T spacing, so that phi_T f is an extension of f|[0, T].
TimeGrid paracontrolled_grid(double T, int steps_per_T = 64);

/// v -> w + E^Y_N(w, w, v) + E^Y_L(w, v, v).
SpaceTimeField v_map(const SpaceTimeField& w, const SpaceTimeField& v, const Multiplier& M);

/// Fixed point of v_map from v_0 = w; stops once successive sup-differences fall below tol.
/// Three consecutive ratios >= 1 (or a non-finite iterate) raise DivergenceError with the
/// ratio history; running out of iterations leaves converged = false.
ParacontrolledPair solve_v_given_w(const SpaceTimeField& w, double tol, int max_iter, const Multiplier& M);

/// The summands of the w-equation, in order:
///   free      e^{it d_x^2} v0
///   Q         I Q(v, ..., v)
///   CH        I C_H(v, v, v)
///   CS        I C_S(v, v, v)
///   CN_diff   I (C_N(v, v, v) - C_N(w, w, v))
///   CL_diff   I (C_L(v, v, v) - C_L(w, v, v))
///   EX_N      E^X_N(w, w, v)
///   EX_L      E^X_L(w, v, v)
/// E^X is formed as I C_* - E^Y_* on the same grid.
struct WRhs {
  static constexpr int kCount = 8;
  static const std::array<const char*, kCount>& names();
  std::array<SpaceTimeField, kCount> terms;
  /// Sum in the fixed order above.
  SpaceTimeField total() const;
};

WRhs w_rhs_terms(const SpaceTimeField& w, const SpaceTimeField& v, const SpectralField& v0, const Multiplier& M3,
                 const Multiplier& M5);
SpaceTimeField w_rhs(const SpaceTimeField& w, const SpaceTimeField& v, const SpectralField& v0, const Multiplier& M3,
                     const Multiplier& M5);

struct PicardOptions {
  double tol = 1e-12;         // outer tolerance; the inner solve uses tol / 100
  int max_iter = 30;
  int inner_max_iter = 50;
  int steps_per_T = 64;
  bool norm_log = true;       // fill z_bound / y_bound per outer step
  std::optional<SpaceTimeField> initial;  // w^0; default phi_T e^{it d_x^2} v0
};

/// w_{n+1} = phi_T w_rhs(w_n, v[w_n], v0).  Inner failures are rethrown with the message prefixed
/// by "inner solve (outer iteration n)"; outer non-contraction by "outer iteration".
ParacontrolledPair picard_solve_w(const SpectralField& v0, const ParameterLadder& L, double T, const Multiplier& M3,
                                  const Multiplier& M5, const PicardOptions& opt = {});

struct MembershipReport {
  bool member = false;
  bool converged = false;
  SpaceTimeField w;
  double z_bound = 0.0;  // ||phi_T w||_{Z0}, an upper bound for the restriction norm
  double y_bound = 0.0;  // ||phi_T v||_{Y0}
  double A2 = 0.0, A3 = 0.0;
  std::vector<IterationRecord> log;
  std::string diagnostics;
};

/// Recovers w from v by w_{n+1} = v - E^Y_N(w_n, w_n, v) - E^Y_L(w_n, v, v), w_0 = v, and checks
/// the ball conditions with the ladder radii.  `T` is the localization scale of the bounds.
MembershipReport manifold_membership(const SpaceTimeField& v, double tol, const Multiplier& M,
                                     const ParameterLadder& L, double T, int max_iter = 50);

/// Upper bounds ||phi_T f||_spec for a field on a paracontrolled grid.
double localized_norm(const SpaceTimeField& f, const NormSpec& spec, double T);

/// Observed homogeneity order of w -> v[w] - w: log(|D(c w)| / |D(w)|) / log c.
double nonlinear_order(const SpaceTimeField& w, double c, const Multiplier& M, double tol);

/// u = gauge_inverse(v).  Without supplied multipliers the result is structural only.
SpaceTimeField reconstruct_solution(const ParacontrolledPair& pair);

}  // namespace dnls

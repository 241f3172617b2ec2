#pragma once

#include <string>
#include <vector>

#include "dnls/eta.hpp"
#include "dnls/fields.hpp"
#include "dnls/quadrature.hpp"

namespace dnls {

/// Quadrature settings shared by the frequency kernels.  Integrals over mu are restricted to
/// |lambda - mu|, |mu - sigma| <= radius, where the cutoff transform has dropped below 1e-12.
struct KernelOptions {
  double radius = 256.0;
  double panel = 1.0;
  int order = 12;
  PVOptions pv{0.1, 1.0, 12, 1e-7};
};

/// Building blocks at one (lambda, sigma, Delta):
///   A   = PV int phi^(lambda - mu) phi^(mu - sigma) / mu dmu
///   AY  = int phi^(lambda - mu) phi^(mu - sigma) H eta^(mu/Delta)/Delta dmu
///   BY  = int phi^(lambda - mu) eta^(mu/Delta)/|Delta| H phi^(mu - sigma) dmu
///   P   = phi^(lambda) H phi^(sigma)
/// With them
///   K    = -i A + i P
///   K^Y  = -i (AY + BY)
///   K^X  = S1 + S2 + S3,  S1 = -i (A - AY),  S2 = i BY,  S3 = i P.
/// `near` is the part of A - AY carried by |mu| <~ 1 (weight phi(mu)), where 1/mu is singular;
/// it obeys the same <lambda>^-B bound as S3 and travels with it in the X0 / X+ split.
struct KernelPieces {
  double A = 0.0, AY = 0.0, BY = 0.0, P = 0.0;
  double near = 0.0;
  double delta = 0.0;

  cplx K() const { return cplx(0.0, P - A); }
  cplx KY() const { return cplx(0.0, -(AY + BY)); }
  cplx S1() const { return cplx(0.0, -(A - AY)); }
  cplx S2() const { return cplx(0.0, BY); }
  cplx S3() const { return cplx(0.0, P); }
  cplx S1near() const { return cplx(0.0, -near); }
  cplx KX() const { return S1() + S2() + S3(); }
  /// Remark-style split with unit implicit constants:
  ///   X0 = (S3 + S1near) 1[<sigma> >= <Delta>] + S2 1[<lambda - sigma> >= <sigma - Delta>],
  ///   X+ = KX - X0.
  cplx KX0(double lambda, double sigma) const;
  cplx KXplus(double lambda, double sigma) const { return KX() - KX0(lambda, sigma); }
};

double kernel_A(double lambda, double sigma, const KernelOptions& opt = {});
double kernel_AY(double lambda, double sigma, double Delta, const KernelOptions& opt = {},
                 const EtaProfile& eta = default_eta());
double kernel_BY(double lambda, double sigma, double Delta, const KernelOptions& opt = {},
                 const EtaProfile& eta = default_eta());
/// PV int phi(mu) phi^(lambda - mu) phi^(mu - sigma) [1/mu - H eta^(mu/Delta)/Delta] dmu.
double kernel_near(double lambda, double sigma, double Delta, const EtaProfile& eta = default_eta());

KernelPieces kernel_pieces(double lambda, double sigma, double Delta, const KernelOptions& opt = {},
                           const EtaProfile& eta = default_eta());

/// Lemma-style kernel of F -> phi(t) int_0^t e^{i(t-s)d_x^2} phi(s) F(s) ds on the twisted side.
cplx kernel_K(double lambda, double sigma, const KernelOptions& opt = {});
cplx kernel_KY(double lambda, double sigma, double Delta, const KernelOptions& opt = {},
               const EtaProfile& eta = default_eta());
cplx kernel_KX(double lambda, double sigma, double Delta, const KernelOptions& opt = {},
               const EtaProfile& eta = default_eta());

enum class KernelBound { K, KY, KX, KYSimplified, KX0, KXPlus };
const char* to_string(KernelBound b);

/// Right-hand side of the bound (without its implicit constant).
double bound_rhs(KernelBound b, double lambda, double sigma, double Delta, int B);
/// |kernel| for the bound's kernel.
double bound_lhs(KernelBound b, const KernelPieces& k, double lambda, double sigma);

struct KernelGrid {
  std::vector<double> lambda, sigma, deltas;
  // pieces[d][i * sigma.size() + j] at (lambda[i], sigma[j], deltas[d])
  std::vector<std::vector<KernelPieces>> pieces;
};

/// Evaluates every piece on the product grid; A and P are shared across the Delta values.
KernelGrid evaluate_kernel_grid(const std::vector<double>& lambda, const std::vector<double>& sigma,
                                const std::vector<double>& deltas, const KernelOptions& opt = {},
                                const EtaProfile& eta = default_eta());

struct BoundFit {
  KernelBound bound = KernelBound::K;
  double delta = 0.0;
  double constant = 0.0;  // max |kernel| / rhs over grid points with rhs > 0
  double lambda_at = 0.0, sigma_at = 0.0;
  long long points = 0;
  long long rhs_zero_nonzero_lhs = 0;  // points where the bound's rhs vanishes but the kernel does not
};

BoundFit fit_bound(const KernelGrid& grid, KernelBound bound, std::size_t delta_index, int B);

/// Uniform grid on [-half, half] with the given step, as a vector.
std::vector<double> symmetric_points(double half, double step);

struct BoundStability {
  KernelBound bound = KernelBound::K;
  double delta = 0.0;
  BoundFit coarse, fine;
  double variation = 0.0;  // max(fine/coarse, coarse/fine)
  bool stable() const { return variation < 2.0 && coarse.rhs_zero_nonzero_lhs == 0 && fine.rhs_zero_nonzero_lhs == 0; }
};

/// Fits every bound on the coarse (lambda_step, sigma_step) grid over [-half, half]^2 and on the
/// grid with both steps halved, for each Delta.  K is reported once with delta = 0.
std::vector<BoundStability> kernel_bound_stability(const std::vector<double>& deltas, double half = 96.0,
                                                   double lambda_step = 2.0, double sigma_step = 2.0,
                                                   int B = 4, const KernelOptions& opt = {});

}  // namespace dnls

#include "dnls/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnls/cutoff.hpp"
#include "parallel.hpp"

namespace dnls {

namespace {

double jb(double x) { return japanese(x); }

struct Window {
  double a, b;
  bool empty() const { return !(b > a); }
};

Window overlap(double lambda, double sigma, double R) {
  return {std::max(lambda, sigma) - R, std::min(lambda, sigma) + R};
}

// Support of eta^(mu/Delta) up to 1e-21: seven widths beyond the outer centres.
Window eta_window(double Delta, const EtaProfile& eta) {
  const double lo = eta.centers[0] - 7.0 * eta.width, hi = eta.centers[1] + 7.0 * eta.width;
  return Delta > 0 ? Window{Delta * lo, Delta * hi} : Window{Delta * hi, Delta * lo};
}

void require_delta(double Delta) {
  if (Delta == 0.0 || !std::isfinite(Delta)) throw InvalidArgument("kernel: Delta must be finite and nonzero");
}

}  // namespace

cplx KernelPieces::KX0(double lambda, double sigma) const {
  cplx out = 0.0;
  if (jb(sigma) >= jb(delta)) out += S3() + S1near();
  if (jb(lambda - sigma) >= jb(sigma - delta)) out += S2();
  return out;
}

double kernel_A(double lambda, double sigma, const KernelOptions& opt) {
  const BumpTransform& ph = phi_transform();
  const Window w = overlap(lambda, sigma, opt.radius);
  if (w.empty()) return 0.0;
  auto f = [&](double mu) { return cplx(ph.hat(lambda - mu) * ph.hat(mu - sigma)); };
  return pv_integral(f, w.a, w.b, 0.0, opt.pv).value.real();
}

double kernel_AY(double lambda, double sigma, double Delta, const KernelOptions& opt, const EtaProfile& eta) {
  require_delta(Delta);
  const BumpTransform& ph = phi_transform();
  const Window w = overlap(lambda, sigma, opt.radius);
  if (w.empty()) return 0.0;
  auto f = [&](double mu) {
    return ph.hat(lambda - mu) * ph.hat(mu - sigma) * eta.scaled_hilbert(mu, Delta);
  };
  return integrate(f, w.a, w.b, std::min(opt.panel, std::abs(Delta) * eta.width), opt.order);
}

double kernel_BY(double lambda, double sigma, double Delta, const KernelOptions& opt, const EtaProfile& eta) {
  require_delta(Delta);
  const BumpTransform& ph = phi_transform();
  const Window e = eta_window(Delta, eta);
  const double a = std::max(lambda - opt.radius, e.a), b = std::min(lambda + opt.radius, e.b);
  if (!(b > a)) return 0.0;
  // eta^(mu/Delta) varies on the scale |Delta| width.
  const double panel = std::min(opt.panel, std::abs(Delta) * eta.width);
  auto f = [&](double mu) {
    return ph.hat(lambda - mu) * eta.scaled_hat(mu, Delta) * ph.hilbert_hat(mu - sigma);
  };
  return integrate(f, a, b, panel, opt.order);
}

double kernel_near(double lambda, double sigma, double Delta, const EtaProfile& eta) {
  require_delta(Delta);
  const BumpTransform& ph = phi_transform();
  auto g = [&](double mu) { return cutoff_phi(mu) * ph.hat(lambda - mu) * ph.hat(mu - sigma); };
  // Symmetrized principal value on [0, 2] plus the regular H eta^ part on [-2, 2].
  const double pv = integrate([&](double mu) { return (g(mu) - g(-mu)) / mu; }, 0.0, 2.0, 0.25, 12);
  const double hy = integrate([&](double mu) { return g(mu) * eta.scaled_hilbert(mu, Delta); }, -2.0, 2.0, 0.25, 12);
  return pv - hy;
}

namespace {

// One pass over the mu nodes computing AY and BY for every Delta.
void fused_pieces(double lambda, double sigma, const std::vector<double>& deltas, const KernelOptions& opt,
                  const EtaProfile& eta, std::vector<KernelPieces>& out) {
  const BumpTransform& ph = phi_transform();
  const Window w = overlap(lambda, sigma, opt.radius);
  const std::size_t nd = deltas.size();
  for (std::size_t d = 0; d < nd; ++d) {
    out[d].AY = 0.0;
    out[d].BY = 0.0;
  }
  if (w.empty()) return;
  const GaussRule& g = gauss_legendre(opt.order);

  // AY shares one pass for every Delta whose scale |Delta| width is at least the panel; smaller
  // |Delta| (where H eta^(mu/Delta) changes faster) get their own finer pass.
  std::vector<std::size_t> shared;
  for (std::size_t d = 0; d < nd; ++d) {
    if (std::abs(deltas[d]) * eta.width >= opt.panel)
      shared.push_back(d);
    else
      out[d].AY = kernel_AY(lambda, sigma, deltas[d], opt, eta);
  }
  if (!shared.empty()) {
    const int np = std::max(1, int(std::ceil((w.b - w.a) / opt.panel)));
    const double h = (w.b - w.a) / np;
    for (int p = 0; p < np; ++p) {
      const double mid = w.a + (p + 0.5) * h, half = 0.5 * h;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double mu = mid + half * g.x[i];
        const double base = half * g.w[i] * ph.hat(lambda - mu) * ph.hat(mu - sigma);
        if (base == 0.0) continue;
        for (std::size_t d : shared) out[d].AY += base * eta.scaled_hilbert(mu, deltas[d]);
      }
    }
  }
  for (std::size_t d = 0; d < nd; ++d) out[d].BY = kernel_BY(lambda, sigma, deltas[d], opt, eta);
}

}  // namespace

KernelPieces kernel_pieces(double lambda, double sigma, double Delta, const KernelOptions& opt,
                           const EtaProfile& eta) {
  require_delta(Delta);
  const BumpTransform& ph = phi_transform();
  KernelPieces k;
  k.delta = Delta;
  k.A = kernel_A(lambda, sigma, opt);
  k.AY = kernel_AY(lambda, sigma, Delta, opt, eta);
  k.BY = kernel_BY(lambda, sigma, Delta, opt, eta);
  k.P = ph.hat(lambda) * ph.hilbert_hat(sigma);
  k.near = kernel_near(lambda, sigma, Delta, eta);
  return k;
}

cplx kernel_K(double lambda, double sigma, const KernelOptions& opt) {
  const BumpTransform& ph = phi_transform();
  return cplx(0.0, ph.hat(lambda) * ph.hilbert_hat(sigma) - kernel_A(lambda, sigma, opt));
}

cplx kernel_KY(double lambda, double sigma, double Delta, const KernelOptions& opt, const EtaProfile& eta) {
  return cplx(0.0, -(kernel_AY(lambda, sigma, Delta, opt, eta) + kernel_BY(lambda, sigma, Delta, opt, eta)));
}

cplx kernel_KX(double lambda, double sigma, double Delta, const KernelOptions& opt, const EtaProfile& eta) {
  return kernel_pieces(lambda, sigma, Delta, opt, eta).KX();
}

const char* to_string(KernelBound b) {
  switch (b) {
    case KernelBound::K: return "K";
    case KernelBound::KY: return "KY";
    case KernelBound::KX: return "KX";
    case KernelBound::KYSimplified: return "KY-simplified";
    case KernelBound::KX0: return "KX0";
    case KernelBound::KXPlus: return "KX+";
  }
  return "?";
}

double bound_rhs(KernelBound b, double l, double s, double D, int B) {
  const double jl = jb(l), js = jb(s), jls = jb(l - s), jD = jb(D), jsD = jb(s - D), jlD = jb(l - D);
  const double mD_s = std::min(1.0 / jD, 1.0 / js), mD_l = std::min(1.0 / jD, 1.0 / jl);
  switch (b) {
    case KernelBound::K:
      return (std::pow(jl, -B) + std::pow(jls, -B)) / js;
    case KernelBound::KY:
      return std::pow(jls, -B) * mD_s + mD_l / jls;
    case KernelBound::KX:
      return std::pow(jl, -B) / js + jsD * std::pow(jls, -B) / js * mD_s + jlD / jls * mD_l * mD_l;
    case KernelBound::KYSimplified:
      return mD_l / jls;
    case KernelBound::KX0:
      return (js >= jD ? std::pow(jl, -B) / jD : 0.0) + (jls >= jsD ? mD_l * mD_l : 0.0);
    case KernelBound::KXPlus:
      return (js < jD ? std::pow(jl, -B) / js : 0.0) + jsD * std::pow(jls, -B) / js * mD_s +
             (jls < jsD ? jsD / jls * mD_l * mD_l : 0.0);
  }
  return 0.0;
}

double bound_lhs(KernelBound b, const KernelPieces& k, double l, double s) {
  switch (b) {
    case KernelBound::K: return std::abs(k.K());
    case KernelBound::KY:
    case KernelBound::KYSimplified: return std::abs(k.KY());
    case KernelBound::KX: return std::abs(k.KX());
    case KernelBound::KX0: return std::abs(k.KX0(l, s));
    case KernelBound::KXPlus: return std::abs(k.KXplus(l, s));
  }
  return 0.0;
}

KernelGrid evaluate_kernel_grid(const std::vector<double>& lambda, const std::vector<double>& sigma,
                                const std::vector<double>& deltas, const KernelOptions& opt,
                                const EtaProfile& eta) {
  for (double D : deltas) require_delta(D);
  KernelGrid G{lambda, sigma, deltas, {}};
  const std::size_t nl = lambda.size(), ns = sigma.size(), nd = deltas.size();
  G.pieces.assign(nd, std::vector<KernelPieces>(nl * ns));
  const BumpTransform& ph = phi_transform();
  detail::parallel_for(static_cast<long long>(nl * ns), [&](long long idx) {
    const std::size_t i = std::size_t(idx) / ns, j = std::size_t(idx) % ns;
    const double l = lambda[i], s = sigma[j];
    std::vector<KernelPieces> kp(nd);
    fused_pieces(l, s, deltas, opt, eta, kp);
    const double A = kernel_A(l, s, opt);
    const double P = ph.hat(l) * ph.hilbert_hat(s);
    for (std::size_t d = 0; d < nd; ++d) {
      kp[d].A = A;
      kp[d].P = P;
      kp[d].delta = deltas[d];
      kp[d].near = kernel_near(l, s, deltas[d], eta);
      G.pieces[d][std::size_t(idx)] = kp[d];
    }
  });
  return G;
}

BoundFit fit_bound(const KernelGrid& grid, KernelBound bound, std::size_t delta_index, int B) {
  if (delta_index >= grid.deltas.size()) throw InvalidArgument("fit_bound: Delta index out of range");
  BoundFit f;
  f.bound = bound;
  f.delta = bound == KernelBound::K ? 0.0 : grid.deltas[delta_index];
  const std::size_t ns = grid.sigma.size();
  const auto& P = grid.pieces[delta_index];
  for (std::size_t i = 0; i < grid.lambda.size(); ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      const double l = grid.lambda[i], s = grid.sigma[j];
      const double lhs = bound_lhs(bound, P[i * ns + j], l, s);
      const double rhs = bound_rhs(bound, l, s, grid.deltas[delta_index], B);
      if (rhs <= 0.0) {
        if (lhs > 0.0) ++f.rhs_zero_nonzero_lhs;
        continue;
      }
      ++f.points;
      const double r = lhs / rhs;
      if (r > f.constant) {
        f.constant = r;
        f.lambda_at = l;
        f.sigma_at = s;
      }
    }
  }
  return f;
}

std::vector<double> symmetric_points(double half, double step) {
  const UniformGrid g = UniformGrid::symmetric(half, step);
  std::vector<double> v(std::size_t(g.n));
  for (Index j = 0; j < g.n; ++j) v[std::size_t(j)] = g[j];
  return v;
}

std::vector<BoundStability> kernel_bound_stability(const std::vector<double>& deltas, double half,
                                                   double lambda_step, double sigma_step, int B,
                                                   const KernelOptions& opt) {
  if (deltas.empty()) throw InvalidArgument("kernel_bound_stability: no Delta values");
  // The fine grid contains the coarse one, so it is evaluated once and subsampled.
  const KernelGrid fine = evaluate_kernel_grid(symmetric_points(half, 0.5 * lambda_step),
                                               symmetric_points(half, 0.5 * sigma_step), deltas, opt);
  KernelGrid coarse;
  coarse.lambda = symmetric_points(half, lambda_step);
  coarse.sigma = symmetric_points(half, sigma_step);
  coarse.deltas = deltas;
  coarse.pieces.assign(deltas.size(), std::vector<KernelPieces>(coarse.lambda.size() * coarse.sigma.size()));
  const std::size_t nsf = fine.sigma.size(), nsc = coarse.sigma.size();
  for (std::size_t d = 0; d < deltas.size(); ++d)
    for (std::size_t i = 0; i < coarse.lambda.size(); ++i)
      for (std::size_t j = 0; j < nsc; ++j)
        coarse.pieces[d][i * nsc + j] = fine.pieces[d][(2 * i) * nsf + 2 * j];

  std::vector<BoundStability> out;
  const KernelBound all[] = {KernelBound::K,    KernelBound::KY,    KernelBound::KX,
                             KernelBound::KYSimplified,  KernelBound::KX0, KernelBound::KXPlus};
  for (KernelBound b : all) {
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      if (b == KernelBound::K && d > 0) break;
      BoundStability s;
      s.bound = b;
      s.delta = b == KernelBound::K ? 0.0 : deltas[d];
      s.coarse = fit_bound(coarse, b, d, B);
      s.fine = fit_bound(fine, b, d, B);
      const double lo = std::min(s.coarse.constant, s.fine.constant);
      const double hi = std::max(s.coarse.constant, s.fine.constant);
      s.variation = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace dnls

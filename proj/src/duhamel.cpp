#include "dnls/duhamel.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <map>

#include "dnls/norms.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

Index zero_index(const TimeGrid& g, const char* who) {
  if (!g.has_point(0.0)) throw InvalidArgument(std::string(who) + ": time grid must contain t = 0");
  return g.nearest(0.0);
}

void require_cover(const TimeGrid& g, double a, double b, const char* who) {
  const double eps = 1e-9 * g.step;
  if (g.start > a + eps || g.back() < b - eps)
    throw InvalidArgument(std::string(who) + ": time grid must cover [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
}

cplx phase(double k, double t) { return std::polar(1.0, k * k * t); }

// Cumulative trapezoid of the twisted integrand from t = 0, for one mode column.
void cumulative_column(const SpaceTimeField& F, int k, Index j0, Eigen::VectorXcd& out) {
  const TimeGrid& g = F.time;
  const Index c = F.col(k);
  out.setZero(g.n);
  const double h = g.step;
  auto tw = [&](Index j) { return phase(k, g[j]) * F.physical(j, c); };
  cplx acc = 0.0;
  for (Index j = j0 + 1; j < g.n; ++j) {
    acc += 0.5 * h * (tw(j - 1) + tw(j));
    out[j] = acc;
  }
  acc = 0.0;
  for (Index j = j0 - 1; j >= 0; --j) {
    acc -= 0.5 * h * (tw(j + 1) + tw(j));
    out[j] = acc;
  }
}

}  // namespace

SpectralField duhamel_apply(const SpaceTimeField& F, double t) {
  F.require_physical();
  const TimeGrid& g = F.time;
  const Index j0 = zero_index(g, "duhamel_apply");
  const double eps = 1e-9 * g.step;
  if (!std::isfinite(t) || t < g.start - eps || t > g.back() + eps)
    throw InvalidArgument("duhamel_apply: t outside the time grid");
  SpectralField out(F.n_max);
  // Last full grid point between 0 and t, then a partial step with F linearly interpolated.
  const double pos = (t - g.start) / g.step;
  Index j1 = t >= 0.0 ? Index(std::floor(pos + 1e-9)) : Index(std::ceil(pos - 1e-9));
  j1 = std::clamp<Index>(j1, 0, g.n - 1);
  Eigen::VectorXcd cum;
  for (int k = -F.n_max; k <= F.n_max; ++k) {
    cumulative_column(F, k, j0, cum);
    cplx acc = cum[j1];
    const double rest = t - g[j1];
    if (std::abs(rest) > eps) {
      const Index j2 = rest > 0 ? j1 + 1 : j1 - 1;
      const double th = std::abs(rest) / g.step;
      const cplx Ft = (1.0 - th) * F.physical(j1, F.col(k)) + th * F.physical(j2, F.col(k));
      acc += 0.5 * rest * (phase(k, g[j1]) * F.physical(j1, F.col(k)) + phase(k, t) * Ft);
    }
    out(k) = std::conj(phase(k, t)) * acc;
  }
  return out;
}

SpaceTimeField duhamel_trajectory(const SpaceTimeField& F) {
  F.require_physical();
  const Index j0 = zero_index(F.time, "duhamel_trajectory");
  SpaceTimeField out(F.n_max, F.time);
  Eigen::VectorXcd cum;
  for (int k = -F.n_max; k <= F.n_max; ++k) {
    cumulative_column(F, k, j0, cum);
    for (Index j = 0; j < F.time.n; ++j) out.physical(j, out.col(k)) = std::conj(phase(k, F.time[j])) * cum[j];
  }
  return out;
}

SpaceTimeField truncated_duhamel(const SpaceTimeField& F) {
  F.require_physical();
  require_cover(F.time, -2.0, 2.0, "truncated_duhamel");
  SpaceTimeField G = F;
  for (Index j = 0; j < F.time.n; ++j) G.physical.row(j) *= cutoff_phi(F.time[j]);
  SpaceTimeField out = duhamel_trajectory(G);
  for (Index j = 0; j < F.time.n; ++j) out.physical.row(j) *= cutoff_phi(F.time[j]);
  return out;
}

namespace {

void require_trio(const SpaceTimeField& a, const SpaceTimeField& b, const SpaceTimeField& c, const char* who) {
  a.require_physical();
  b.require_physical();
  c.require_physical();
  if (a.n_max != b.n_max || a.n_max != c.n_max || !(a.time == b.time) || !(a.time == c.time))
    throw InvalidArgument(std::string(who) + ": inputs must share n_max and time grid");
}

void require_star(TripleClass c, const char* who) {
  if (c != TripleClass::N && c != TripleClass::L)
    throw InvalidArgument(std::string(who) + ": only the classes N and L are defined");
}

// Twisted group integrand g(t_j) = e^{ik^2 t_j} sum coef conj(v1) v2 v3, with the optional phi(s) on v1.
bool group_integrand(const ResonanceGroup& G, const SpaceTimeField& v1, const SpaceTimeField& v2,
                     const SpaceTimeField& v3, bool truncated, std::vector<cplx>& g) {
  const Index nt = v1.time.n;
  g.assign(std::size_t(nt), cplx(0.0));
  bool any = false;
  for (std::size_t t = 0; t < G.triples.size(); ++t) {
    const auto& tr = G.triples[t];
    const Index c1 = v1.col(int(tr[0])), c2 = v2.col(int(tr[1])), c3 = v3.col(int(tr[2]));
    for (Index j = 0; j < nt; ++j) {
      const cplx p = std::conj(v1.physical(j, c1)) * v2.physical(j, c2) * v3.physical(j, c3);
      if (p != cplx(0.0)) any = true;
      g[std::size_t(j)] += G.coef[t] * p;
    }
  }
  if (!any) return false;
  for (Index j = 0; j < nt; ++j) {
    const double t = v1.time[j];
    g[std::size_t(j)] *= phase(double(G.k), t) * (truncated ? cutoff_phi(t) : 1.0);
  }
  return true;
}

Index pow2_at_least(Index n) {
  Index m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Discrete causal trapezoid convolution  dt [sum_{i<=m} w_{m-i} f_i - w_m f_0 / 2 - w_0 f_m / 2].
class ConvolutionEngine {
 public:
  explicit ConvolutionEngine(Index len) : L_(pow2_at_least(2 * len)) {}

  const std::vector<cplx>& weight_spectrum(const ResonantWeight& W, double scale, double dt, Index len) {
    auto it = cache_.find(scale);
    if (it != cache_.end()) return it->second;
    std::vector<cplx> w(std::size_t(L_), cplx(0.0)), spec;
    for (Index d = 0; d < len; ++d) w[std::size_t(d)] = W(scale * double(d) * dt);
    fft_.fwd(spec, w);
    return cache_.emplace(scale, std::move(spec)).first->second;
  }

  void run(const std::vector<cplx>& f, const std::vector<cplx>& wspec, const ResonantWeight& W, double scale,
           double dt, std::vector<cplx>& out) {
    const Index n = Index(f.size());
    std::vector<cplx> pad(std::size_t(L_), cplx(0.0)), spec, conv;
    std::copy(f.begin(), f.end(), pad.begin());
    fft_.fwd(spec, pad);
    for (Index i = 0; i < L_; ++i) spec[std::size_t(i)] *= wspec[std::size_t(i)];
    fft_.inv(conv, spec);
    out.assign(std::size_t(n), cplx(0.0));
    const cplx w0 = W(0.0);
    for (Index m = 1; m < n; ++m) {
      const cplx wm = W(scale * double(m) * dt);
      out[std::size_t(m)] = dt * (conv[std::size_t(m)] - 0.5 * wm * f[0] - 0.5 * w0 * f[std::size_t(m)]);
    }
  }

 private:
  Index L_;
  Eigen::FFT<double> fft_;
  std::map<double, std::vector<cplx>> cache_;
};

}  // namespace

SpaceTimeField resonant_duhamel(TripleClass cls, const SpaceTimeField& v1, const SpaceTimeField& v2,
                                const SpaceTimeField& v3, const Multiplier& M, const ResonantWeight& W,
                                bool truncated) {
  require_trio(v1, v2, v3, "resonant_duhamel");
  if (!W) throw InvalidArgument("resonant_duhamel: empty weight");
  const TimeGrid& tg = v1.time;
  const Index j0 = zero_index(tg, "resonant_duhamel");
  if (truncated) require_cover(tg, -2.0, 2.0, "resonant_duhamel");
  const Index nf = tg.n - j0, nb = j0 + 1;
  const double dt = tg.step;
  ConvolutionEngine fwd(nf), bwd(nb);

  SpaceTimeField out(v1.n_max, tg);
  std::vector<cplx> g, f, r;
  for (const ResonanceGroup& G : resonance_groups(v1.n_max, cls, M)) {
    if (!group_integrand(G, v1, v2, v3, truncated, g)) continue;
    const double D = double(G.delta);
    const Index c = out.col(int(G.k));
    // Forward in time: f_m = g(t_{j0+m}), kernel W(D m dt).
    f.assign(g.begin() + j0, g.end());
    fwd.run(f, fwd.weight_spectrum(W, D, dt, nf), W, D, dt, r);
    for (Index m = 0; m < nf; ++m) out.physical(j0 + m, c) += std::conj(phase(double(G.k), tg[j0 + m])) * r[std::size_t(m)];
    // Backward: f_m = g(t_{j0-m}), t - s = -(m - i) dt, and the integral changes sign.
    f.resize(std::size_t(nb));
    for (Index m = 0; m < nb; ++m) f[std::size_t(m)] = g[std::size_t(j0 - m)];
    bwd.run(f, bwd.weight_spectrum(W, -D, dt, nb), W, -D, dt, r);
    for (Index m = 1; m < nb; ++m)
      out.physical(j0 - m, c) -= std::conj(phase(double(G.k), tg[j0 - m])) * r[std::size_t(m)];
  }
  if (truncated)
    for (Index j = 0; j < tg.n; ++j) out.physical.row(j) *= cutoff_phi(tg[j]);
  return out;
}

SpaceTimeField ic_apply(TripleClass cls, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, bool truncated) {
  require_trio(v1, v2, v3, "ic_apply");
  const TimeGrid& tg = v1.time;
  const Index j0 = zero_index(tg, "ic_apply");
  if (truncated) require_cover(tg, -2.0, 2.0, "ic_apply");
  const double h = tg.step;
  SpaceTimeField out(v1.n_max, tg);
  std::vector<cplx> g;
  for (const ResonanceGroup& G : resonance_groups(v1.n_max, cls, M)) {
    if (!group_integrand(G, v1, v2, v3, truncated, g)) continue;
    const Index c = out.col(int(G.k));
    cplx acc = 0.0;
    for (Index j = j0 + 1; j < tg.n; ++j) {
      acc += 0.5 * h * (g[std::size_t(j - 1)] + g[std::size_t(j)]);
      out.physical(j, c) += std::conj(phase(double(G.k), tg[j])) * acc;
    }
    acc = 0.0;
    for (Index j = j0 - 1; j >= 0; --j) {
      acc -= 0.5 * h * (g[std::size_t(j + 1)] + g[std::size_t(j)]);
      out.physical(j, c) += std::conj(phase(double(G.k), tg[j])) * acc;
    }
  }
  if (truncated)
    for (Index j = 0; j < tg.n; ++j) out.physical.row(j) *= cutoff_phi(tg[j]);
  return out;
}

SpaceTimeField EY_apply(TripleClass star, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, bool truncated, const EtaProfile& eta) {
  require_star(star, "EY_apply");
  return resonant_duhamel(star, v1, v2, v3, M, [&eta](double x) { return eta.time(x); }, truncated);
}

std::pair<SpaceTimeField, SpaceTimeField> EX_split(TripleClass star, const SpaceTimeField& v1,
                                                   const SpaceTimeField& v2, const SpaceTimeField& v3,
                                                   const Multiplier& M, const XSplitOptions& opts,
                                                   const EtaProfile& eta) {
  require_star(star, "EX_split");
  require_trio(v1, v2, v3, "EX_split");
  const TimeGrid& tg = v1.time;
  // The inputs are tapered to zero on [2, ext] so that their transform decays; the kernel only
  // sees them through phi(s), which vanishes there.
  const double ext = std::min(-tg.start, tg.back());
  if (!(ext >= 3.0 - 1e-9)) throw InvalidArgument("EX_split: X0/Xplus need a time grid covering [-3, 3]");
  if (opts.lambda.n < 1) throw InvalidArgument("EX_split: empty lambda grid");

  std::vector<double> lam(std::size_t(opts.lambda.n));
  for (Index m = 0; m < opts.lambda.n; ++m) lam[std::size_t(m)] = opts.lambda[m];
  std::pair<SpaceTimeField, SpaceTimeField> out{SpaceTimeField::twisted_only(v1.n_max, opts.lambda),
                                                SpaceTimeField::twisted_only(v1.n_max, opts.lambda)};
  const GaussRule& gr = gauss_legendre(opts.sigma_order);
  std::vector<cplx> g;
  for (const ResonanceGroup& G : resonance_groups(v1.n_max, star, M)) {
    if (!group_integrand(G, v1, v2, v3, false, g)) continue;
    const double D = double(G.delta);
    std::vector<double> sig, wsig;
    const double a = D - opts.sigma_radius, b = D + opts.sigma_radius;
    const int np = std::max(1, int(std::ceil((b - a) / opts.sigma_panel)));
    const double hp = (b - a) / np;
    for (int p = 0; p < np; ++p)
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        sig.push_back(a + (p + 0.5) * hp + 0.5 * hp * gr.x[i]);
        wsig.push_back(0.5 * hp * gr.w[i]);
      }
    // Transform of the tapered integrand at the sigma nodes (trapezoid in time).
    std::vector<cplx> ghat(sig.size(), cplx(0.0));
    for (Index j = 0; j < tg.n; ++j) {
      const double t = tg[j], at = std::abs(t);
      const double taper = at <= 2.0 ? 1.0 : (at >= ext ? 0.0 : 1.0 - smooth_step((at - 2.0) / (ext - 2.0)));
      if (taper == 0.0) continue;
      const double wj = (j == 0 || j == tg.n - 1 ? 0.5 : 1.0) * tg.step / (2.0 * M_PI);
      const cplx gj = wj * taper * g[std::size_t(j)];
      for (std::size_t q = 0; q < sig.size(); ++q) ghat[q] += gj * std::polar(1.0, -sig[q] * t);
    }
    const KernelGrid K = evaluate_kernel_grid(lam, sig, {D}, opts.kernel, eta);
    const Index c = out.first.col(int(G.k));
    for (std::size_t m = 0; m < lam.size(); ++m) {
      cplx x0 = 0.0, xp = 0.0;
      for (std::size_t q = 0; q < sig.size(); ++q) {
        const KernelPieces& kp = K.pieces[0][m * sig.size() + q];
        x0 += wsig[q] * kp.KX0(lam[m], sig[q]) * ghat[q];
        xp += wsig[q] * kp.KXplus(lam[m], sig[q]) * ghat[q];
      }
      out.first.twisted(Index(m), c) += x0;
      out.second.twisted(Index(m), c) += xp;
    }
  }
  out.first.quadrature_tol = out.second.quadrature_tol = 1e-4;
  return out;
}

SpaceTimeField EX_apply(TripleClass star, const SpaceTimeField& v1, const SpaceTimeField& v2,
                        const SpaceTimeField& v3, const Multiplier& M, XSplit split, const XSplitOptions& opts,
                        const EtaProfile& eta) {
  require_star(star, "EX_apply");
  if (split == XSplit::Whole) {
    SpaceTimeField out = ic_apply(star, v1, v2, v3, M, true);
    out.physical -= EY_apply(star, v1, v2, v3, M, true, eta).physical;
    return out;
  }
  auto pr = EX_split(star, v1, v2, v3, M, opts, eta);
  return split == XSplit::X0 ? std::move(pr.first) : std::move(pr.second);
}

GainFit localization_gain_probe(const SpaceTimeField& u, const std::vector<double>& Ts, double p0, double delta,
                                double tol) {
  u.require_physical();
  if (Ts.size() < 2) throw InvalidArgument("localization_gain_probe: need at least two T values");
  const Index j0 = zero_index(u.time, "localization_gain_probe");
  const double sup = u.physical.cwiseAbs().maxCoeff();
  const double at0 = u.physical.row(j0).cwiseAbs().maxCoeff();
  if (at0 > tol * std::max(sup, 1e-300))
    throw InvalidArgument("localization_gain_probe: u(0) must vanish (|u(0)| = " + std::to_string(at0) + ")");
  const ParameterLadder L = ladder(p0, delta);
  const NormSpec Y0 = space_Y0(L), Y1 = space_Y1(L);
  const LambdaGrid lg = lambda_grid_for(u.time);
  const double denom = xsb_norm(twist(u, lg), Y1);
  if (!(denom > 0.0)) throw InvalidArgument("localization_gain_probe: zero field");
  GainFit fit;
  for (double T : Ts) {
    if (!(T > 0.0)) throw InvalidArgument("localization_gain_probe: T must be positive");
    SpaceTimeField w = u;
    const CutoffProfile phiT(T);
    for (Index j = 0; j < u.time.n; ++j) w.physical.row(j) *= phiT(u.time[j]);
    fit.T.push_back(T);
    fit.ratio.push_back(xsb_norm(twist(w, lg), Y0) / denom);
  }
  // Least-squares slope of log ratio on log T.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(fit.T.size());
  for (std::size_t i = 0; i < fit.T.size(); ++i) {
    const double x = std::log(fit.T[i]), y = std::log(fit.ratio[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.theta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace dnls

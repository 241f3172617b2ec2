#include "dnls/probes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <unsupported/Eigen/FFT>

#include "dnls/cutoff.hpp"
#include "dnls/random.hpp"
#include "parallel.hpp"

namespace dnls {

namespace {

// Lattice spacing of the dense lambda windows and half-widths beyond which phi^ and psi^ are
// below 2e-6 of their peak (psi = phi^4 is the time profile of the localized integrand).
constexpr double kH = 0.125;
constexpr double kW = 64.0;
constexpr double kXi = 64.0;
constexpr long long kWi = 512;   // kW / kH
constexpr long long kXii = 512;  // kXi / kH
// eta^ is negligible (< 1e-16 of its peak) outside this zeta range.
constexpr double kZetaLo = -2.6, kZetaHi = 4.6;
// Groups with |Delta| at least this have an eta^(mu/Delta) that is flat on the phi^ scale.
constexpr double kBroadDelta = 16.0 * kW;

const cplx kI(0.0, 1.0);

const BumpTransform& psi_transform() {
  static const BumpTransform t(
      1.0, 2.0, [](double s) { return std::pow(cutoff_phi(s), 4); },
      [](double s) {
        const double p = cutoff_phi(s);
        return 4.0 * p * p * p * cutoff_phi_derivative(s);
      });
  return t;
}

struct Tables {
  std::vector<cplx> phat;  // phi^(m h), m in [-kWi, kWi]
  Tables() {
    phat.resize(std::size_t(2 * kWi + 1));
    for (long long m = -kWi; m <= kWi; ++m) phat[std::size_t(m + kWi)] = phi_transform().hat(double(m) * kH);
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

double phat(double x) { return phi_transform().hat(x); }
double psihat(double x) { return psi_transform().hat(x); }
double dphat(double x) { return (phat(x + 1e-5) - phat(x - 1e-5)) / 2e-5; }
double dpsihat(double x) { return (psihat(x + 1e-5) - psihat(x - 1e-5)) / 2e-5; }
// P(nu) = PV int psi^(xi) / (i (nu + xi)) dxi.
cplx Pfun(double nu) { return -kI * psi_transform().hilbert_hat(nu); }

// Full linear convolution c[m] = sum_j a[j] b[m - j].
std::vector<cplx> fft_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t n = a.size() + b.size() - 1;
  std::size_t L = 1;
  while (L < n) L <<= 1;
  std::vector<cplx> pa(L, 0.0), pb(L, 0.0), fa, fb, out;
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  Eigen::FFT<double> fft;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
  fft.inv(out, fa);
  out.resize(n);
  return out;
}

// phi^ * (samples a on lattice [lo, lo + a.size())), as lattice values on [lo - kWi, ...).
std::vector<cplx> smear(const std::vector<cplx>& a) { return fft_convolve(a, tables().phat); }

struct Segment {
  long long i0 = 0;  // lattice index of v[0]
  std::vector<cplx> v;
  long long i1() const { return i0 + (long long)v.size() - 1; }
};

// Twisted output of a single (k, Delta) group with unit coefficient.
struct GroupResponse {
  long long delta = 0, shifted = 0;  // Delta and Delta' = Delta + lambda2 + lambda3 - lambda1
  bool broad = false;                // pointwise tail -g(lambda) outside the segments
  cplx scale = 1.0;                  // eta(0) for the Delta = 0 diagonal under E^Y
  std::vector<Segment> segs;
  const EtaProfile* eta = nullptr;

  cplx g(double mu) const {
    return eta->scaled_hat(mu, double(delta)) * Pfun(double(shifted) - mu);
  }
  cplx at_index(long long i) const {
    for (const Segment& s : segs)
      if (i >= s.i0 && i <= s.i1()) return scale * s.v[std::size_t(i - s.i0)];
    return broad ? -g(double(i) * kH) : cplx(0.0);
  }
  cplx at(double lambda) const { return broad ? -g(lambda) : cplx(0.0); }
};

void add_segment(std::vector<Segment>& segs, Segment s) {
  for (Segment& t : segs) {
    if (s.i0 <= t.i1() + 1 && t.i0 <= s.i1() + 1) {
      const long long lo = std::min(s.i0, t.i0), hi = std::max(s.i1(), t.i1());
      Segment m{lo, std::vector<cplx>(std::size_t(hi - lo + 1), 0.0)};
      for (std::size_t j = 0; j < t.v.size(); ++j) m.v[std::size_t(t.i0 - lo) + j] += t.v[j];
      for (std::size_t j = 0; j < s.v.size(); ++j) m.v[std::size_t(s.i0 - lo) + j] += s.v[j];
      t = std::move(m);
      return;
    }
  }
  segs.push_back(std::move(s));
}

// T1(lambda) = int psi^(xi) phi^(lambda - Delta' - xi) Q(Delta' + xi) dxi on the window around Delta'.
Segment resonant_window(bool duhamel, long long delta, long long shifted, const EtaProfile& eta) {
  const double Dp = double(shifted);
  const bool pv = duhamel && std::abs(Dp) <= kXi;
  const long long J = pv ? 2 * kXii : kXii;
  const long long j0 = pv ? -shifted * 8 : 0;  // lattice index of xi0 = -Delta'
  std::vector<cplx> A(std::size_t(2 * J + 1));
  for (long long j = -J; j <= J; ++j) {
    const double xi = double(j) * kH;
    cplx q;
    if (duhamel) {
      if (pv && j == j0) {
        A[std::size_t(j + J)] = 0.0;
        continue;
      }
      q = 1.0 / (kI * (Dp + xi));
    } else {
      q = -kI * eta.scaled_hilbert(Dp + xi, double(delta));
    }
    A[std::size_t(j + J)] = kH * psihat(xi) * q;
  }
  Segment s{shifted * 8 - J - kWi, smear(A)};
  if (pv) {
    // Principal value: the excluded node is restored by F0 (log - S) + h F'(xi0).
    const double xi0 = -Dp, a = -double(J) * kH, b = double(J) * kH;
    double S = 0.0;
    for (long long j = -J; j <= J; ++j) {
      if (j == j0) continue;
      const double w = (j == -J || j == J) ? 0.5 : 1.0;
      S += w * kH / (double(j) * kH - xi0);
    }
    const double lg = std::log((b - xi0) / (xi0 - a));
    const double p0 = psihat(xi0), dp0 = dpsihat(xi0);
    for (std::size_t m = 0; m < s.v.size(); ++m) {
      const double lambda = double(s.i0 + (long long)m) * kH;
      const double x = lambda - Dp;  // F(xi) = psi^(xi) phi^(x - xi)
      const double F0 = p0 * phat(x - xi0);
      const double dF = dp0 * phat(x - xi0) - p0 * dphat(x - xi0);
      s.v[m] += (F0 * (lg - S) + kH * dF) / kI;
    }
  }
  return s;
}

GroupResponse group_response(ProbeOperator op, long long delta, long long shifted, const EtaProfile& eta) {
  GroupResponse r;
  r.delta = delta;
  r.shifted = shifted;
  r.eta = &eta;
  const bool duhamel = op == ProbeOperator::Trilinear || delta == 0;
  if (op != ProbeOperator::Trilinear && delta == 0) r.scale = eta.time(0.0);
  add_segment(r.segs, resonant_window(duhamel, delta, shifted, eta));
  if (duhamel) {
    // T2 = -phi^(lambda) P(Delta') around lambda = 0.
    const cplx P = Pfun(double(shifted));
    Segment z{-kWi, std::vector<cplx>(std::size_t(2 * kWi + 1))};
    for (long long m = -kWi; m <= kWi; ++m) z.v[std::size_t(m + kWi)] = -tables().phat[std::size_t(m + kWi)] * P;
    add_segment(r.segs, std::move(z));
    return r;
  }
  // T2 = -int g(mu) phi^(lambda - mu) dmu,  g(mu) = eta^(mu/Delta)/|Delta| P(Delta' - mu).
  const double D = double(delta);
  long long lo, hi;
  if (std::abs(D) < kBroadDelta) {
    lo = (long long)std::floor(std::min(D * kZetaLo, D * kZetaHi) / kH);
    hi = (long long)std::ceil(std::max(D * kZetaLo, D * kZetaHi) / kH);
  } else {
    r.broad = true;
    const long long R = r.segs.front().i1() - shifted * 8;  // half-width of the resonant window
    lo = shifted * 8 - R - kWi;
    hi = shifted * 8 + R + kWi;
  }
  std::vector<cplx> gs(std::size_t(hi - lo + 1));
  for (long long m = lo; m <= hi; ++m) gs[std::size_t(m - lo)] = -kH * r.g(double(m) * kH);
  Segment t{lo - kWi, smear(gs)};
  if (r.broad) {
    // Keep the part where the whole phi^ stencil saw samples of g.
    const long long keep_lo = lo + kWi, keep_hi = hi - kWi;
    t.v = std::vector<cplx>(t.v.begin() + (keep_lo - t.i0), t.v.begin() + (keep_hi - t.i0) + 1);
    t.i0 = keep_lo;
  }
  add_segment(r.segs, std::move(t));
  return r;
}

struct Triple {
  long long k, delta;
  cplx coef;
};

}  // namespace

const char* to_string(ProbeOperator op) {
  switch (op) {
    case ProbeOperator::Trilinear: return "trilinear";
    case ProbeOperator::EY_N: return "EY_N";
    case ProbeOperator::EY_L: return "EY_L";
  }
  return "?";
}

const char* to_string(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::Isotropic: return "isotropic";
    case ProbeFamily::HighLowA: return "high-low-A";
    case ProbeFamily::HighLowB: return "high-low-B";
  }
  return "?";
}

double input_norm(const SparseInput& u, const NormSpec& spec) {
  if (spec.spatial()) throw InvalidArgument("input_norm: spec lacks the modulation exponent b");
  std::vector<double> spatial;
  for (const auto& [k, c] : u.modes) spatial.push_back(std::pow(japanese(k), spec.s) * std::abs(c));
  double sp = 0.0;
  if (!spatial.empty()) {
    const double mx = *std::max_element(spatial.begin(), spatial.end());
    if (mx == 0.0) return 0.0;
    if (std::isinf(spec.p)) {
      sp = mx;
    } else {
      double s = 0.0;
      for (double x : spatial) s += std::pow(x / mx, spec.p);
      sp = mx * std::pow(s, 1.0 / spec.p);
    }
  }
  if (sp == 0.0) return 0.0;
  const double b = *spec.b, q = spec.q.value_or(2.0);
  const double ext = phi_transform().extent();
  const long long M = (long long)(ext / kH);
  double peak = 0.0;
  std::vector<double> h(std::size_t(2 * M + 1));
  for (long long m = -M; m <= M; ++m) {
    const double mu = double(m) * kH;
    h[std::size_t(m + M)] = std::pow(japanese(mu + u.lambda0), b) * std::abs(phat(mu));
    peak = std::max(peak, h[std::size_t(m + M)]);
  }
  double lam;
  if (std::isinf(q)) {
    lam = peak;
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double w = (i == 0 || i + 1 == h.size()) ? 0.5 : 1.0;
      s += w * std::pow(h[i] / peak, q);
    }
    lam = peak * std::pow(s * kH, 1.0 / q);
  }
  return sp * lam;
}

OutputSpectrum probe_output(ProbeOperator op, const SparseInput& v1, const SparseInput& v2, const SparseInput& v3,
                            const Multiplier& M, const EtaProfile& eta) {
  const int n = v1.n_max;
  if (v2.n_max != n || v3.n_max != n) throw InvalidArgument("probe_output: inputs must share n_max");
  if (M.arity() != 3) throw InvalidArgument("probe_output: expected a cubic multiplier");
  const long long offset = (long long)v2.lambda0 + v3.lambda0 - v1.lambda0;
  std::map<std::pair<long long, long long>, cplx> groups;
  for (const auto& [k1, c1] : v1.modes)
    for (const auto& [k2, c2] : v2.modes)
      for (const auto& [k3, c3] : v3.modes) {
        const long long k = (long long)k2 + k3 - k1;
        if (k < -n || k > n || !in_V3(k, k1, k2, k3)) continue;
        if (op == ProbeOperator::EY_N && classify_triple(k, k1, k2, k3) != TripleClass::N) continue;
        if (op == ProbeOperator::EY_L && classify_triple(k, k1, k2, k3) != TripleClass::L) continue;
        const long long delta = (long long)resonance_delta(k, k1, k2, k3);
        groups[{k, delta}] += double(k1) * M(k, k1, k2, k3) * std::conj(c1) * c2 * c3;
      }

  OutputSpectrum out;
  std::map<long long, std::vector<std::pair<cplx, GroupResponse>>> by_mode;
  for (const auto& [key, G] : groups) {
    if (G == cplx(0.0)) continue;
    by_mode[key.first].emplace_back(G, group_response(op, key.second, key.second + offset, eta));
    ++out.groups;
  }

  for (auto& [k, list] : by_mode) {
    // Dense lattice intervals (merged) and the broad hull of the pointwise tails.
    std::vector<std::pair<long long, long long>> iv;
    double hull_lo = 0.0, hull_hi = 0.0, smax = kH;
    bool any_broad = false;
    for (const auto& [G, r] : list) {
      for (const Segment& s : r.segs) iv.emplace_back(s.i0, s.i1());
      if (r.broad) {
        const double D = double(r.delta);
        const double a = std::min(D * kZetaLo, D * kZetaHi) - kW, b = std::max(D * kZetaLo, D * kZetaHi) + kW;
        hull_lo = any_broad ? std::min(hull_lo, a) : a;
        hull_hi = any_broad ? std::max(hull_hi, b) : b;
        smax = std::max(smax, std::abs(D) / 256.0);
        any_broad = true;
      }
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<long long, long long>> merged;
    for (const auto& x : iv) {
      if (!merged.empty() && x.first <= merged.back().second + 1)
        merged.back().second = std::max(merged.back().second, x.second);
      else
        merged.push_back(x);
    }

    OutputSpectrum::Mode mode;
    mode.k = int(k);
    auto gap = [&](double a, double b) {
      if (!any_broad || b - a <= 2.0 * kH) return;
      for (double x = a;;) {
        const double d = std::min(x - a, b - x);
        x += std::clamp(d / 8.0, kH, smax);
        if (x >= b - 0.5 * kH) break;
        cplx v = 0.0;
        for (const auto& [G, r] : list) v += G * r.at(x);
        mode.lambda.push_back(x);
        mode.value.push_back(v);
      }
    };
    double prev = any_broad ? std::min(hull_lo, double(merged.front().first) * kH) : double(merged.front().first) * kH;
    for (const auto& [i0, i1] : merged) {
      gap(prev, double(i0) * kH);
      for (long long i = i0; i <= i1; ++i) {
        cplx v = 0.0;
        for (const auto& [G, r] : list) v += G * r.at_index(i);
        mode.lambda.push_back(double(i) * kH);
        mode.value.push_back(v);
      }
      prev = double(i1) * kH;
    }
    if (any_broad) gap(prev, std::max(hull_hi, prev));
    out.modes.push_back(std::move(mode));
  }
  return out;
}

double output_norm(const OutputSpectrum& out, const NormSpec& spec) {
  if (spec.spatial()) throw InvalidArgument("output_norm: spec lacks the modulation exponent b");
  const double b = *spec.b, q = spec.q.value_or(2.0);
  std::vector<double> outer;
  for (const auto& m : out.modes) {
    const std::size_t N = m.lambda.size();
    std::vector<double> h(N);
    double peak = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      h[i] = std::pow(japanese(m.lambda[i]), b) * std::abs(m.value[i]);
      peak = std::max(peak, h[i]);
    }
    double inner = 0.0;
    if (peak > 0.0) {
      if (std::isinf(q)) {
        inner = peak;
      } else {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < N; ++i)
          s += 0.5 * (m.lambda[i + 1] - m.lambda[i]) * (std::pow(h[i] / peak, q) + std::pow(h[i + 1] / peak, q));
        inner = peak * std::pow(s, 1.0 / q);
      }
    }
    outer.push_back(std::pow(japanese(m.k), spec.s) * inner);
  }
  if (outer.empty()) return 0.0;
  const double mx = *std::max_element(outer.begin(), outer.end());
  if (mx == 0.0 || std::isinf(spec.p)) return mx;
  double s = 0.0;
  for (double x : outer) s += std::pow(x / mx, spec.p);
  return mx * std::pow(s, 1.0 / spec.p);
}

std::array<SparseInput, 3> draw_probe_inputs(ProbeOperator op, ProbeFamily family, int n_max, std::mt19937_64& rng,
                                             int modes_per_input) {
  if (n_max < 2) throw InvalidArgument("draw_probe_inputs: n_max must be >= 2");
  if (modes_per_input < 1) throw InvalidArgument("draw_probe_inputs: need at least one mode per input");
  std::normal_distribution<double> normal;
  const int low = std::max(1, n_max / 8);
  auto pick = [&](bool hi_band, bool lo_band) {
    std::uniform_int_distribution<int> any(-n_max, n_max), lo(-low, low), mag(n_max / 2, n_max), sign(0, 1);
    auto draw = [&] {
      if (hi_band) return sign(rng) ? mag(rng) : -mag(rng);
      if (lo_band) return lo(rng);
      return any(rng);
    };
    std::set<int> ks;
    const int cap = hi_band ? 2 * (n_max - n_max / 2 + 1) : lo_band ? 2 * low + 1 : 2 * n_max + 1;
    const int want = std::min(modes_per_input, cap);
    while (int(ks.size()) < want) ks.insert(draw());
    return ks;
  };
  std::array<std::set<int>, 3> supp;
  std::array<int, 3> lam{0, 0, 0};
  switch (family) {
    case ProbeFamily::Isotropic: {
      std::uniform_int_distribution<int> l(-3, 3);
      for (int j = 0; j < 3; ++j) {
        supp[std::size_t(j)] = pick(false, false);
        lam[std::size_t(j)] = l(rng);
      }
      break;
    }
    case ProbeFamily::HighLowA:
      supp = {pick(true, false), pick(false, true), pick(false, true)};
      break;
    case ProbeFamily::HighLowB:
      supp = {pick(true, false), pick(true, false), pick(false, true)};
      break;
  }
  auto force_zero = [&](std::set<int>& s) {
    if (s.count(0)) return;
    s.erase(s.begin());
    s.insert(0);
  };
  if (op == ProbeOperator::EY_N) force_zero(supp[2]);
  if (op == ProbeOperator::EY_L) {
    force_zero(supp[1]);
    force_zero(supp[2]);
  }
  std::array<SparseInput, 3> in;
  for (std::size_t j = 0; j < 3; ++j) {
    in[j].n_max = n_max;
    in[j].lambda0 = lam[j];
    for (int k : supp[j]) {
      const double re = normal(rng), im = normal(rng);
      in[j].modes.emplace_back(k, cplx(re, im));
    }
  }
  return in;
}

std::map<double, double> ProbeReport::max_doubling_growth() const {
  std::map<double, std::map<int, double>> byp;
  for (const auto& c : cells)
    if (c.constant > 0.0) byp[c.p][c.n_max] = c.constant;
  std::map<double, double> g;
  for (const auto& [p, row] : byp) {
    double worst = 0.0;
    for (const auto& [n, C] : row) {
      auto it = row.find(2 * n);
      if (it != row.end()) worst = std::max(worst, it->second / C);
    }
    g[p] = worst;
  }
  return g;
}

namespace {

double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x0, y0] : pts) {
    const double x = std::log(x0), y = std::log(y0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void fill_slopes(ProbeReport& r) {
  std::map<double, std::vector<std::pair<double, double>>> byp;
  for (const auto& c : r.cells)
    if (c.constant > 0.0) byp[c.p].emplace_back(double(c.n_max), c.constant);
  for (const auto& [p, pts] : byp) r.slope[p] = loglog_slope(pts);
}

// Runs the sample loop shared by the probes; `ratio` returns the per-p ratios (0 when excluded).
template <typename Ratio>
void run_cells(ProbeReport& r, ProbeOperator op, const std::vector<double>& ps, const std::vector<int>& n_maxes,
               int samples, std::uint64_t seed, Ratio&& ratio) {
  if (samples < 1) throw InvalidArgument("probe: need at least one sample");
  const RngStreams streams(seed);
  for (int n : n_maxes) {
    std::vector<ProbeCell> row(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      row[i].p = ps[i];
      row[i].n_max = n;
      row[i].seed = seed;
    }
    // Samples are independent; their ratios are merged in index order.
    std::vector<std::vector<double>> ratios{std::size_t(samples)};
    detail::parallel_for(samples, [&](long long s) {
      auto rng = streams.stream(std::string("probes/") + to_string(op) + "/n" + std::to_string(n) + "/s" +
                                std::to_string(s));
      const auto in = draw_probe_inputs(op, ProbeFamily(s % 3), n, rng);
      const OutputSpectrum out = probe_output(op, in[0], in[1], in[2], Multiplier::unit(3));
      for (double p : ps) ratios[std::size_t(s)].push_back(ratio(in, out, p));
    });
    for (int s = 0; s < samples; ++s)
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const double q = ratios[std::size_t(s)][i];
        if (!(q > 0.0)) continue;
        ++row[i].samples;
        if (q > row[i].constant) {
          row[i].constant = q;
          row[i].argmax_family = ProbeFamily(s % 3);
        }
      }
    for (auto& c : row) r.cells.push_back(c);
  }
  fill_slopes(r);
}

}  // namespace

ProbeReport trilinear_probe(const std::vector<double>& ps, const std::vector<int>& n_maxes, int samples,
                            std::uint64_t seed, const ParameterLadder& L) {
  ProbeReport r;
  r.estimate = "trilinear";
  r.grid_note = "s=1/2 b=1/2+delta q=2; lambda windows h=1/8, phi^/psi^ half-widths 64";
  const double b = 0.5 + L.delta;
  run_cells(r, ProbeOperator::Trilinear, ps, n_maxes, samples, seed,
            [&](const std::array<SparseInput, 3>& in, const OutputSpectrum& out, double p) {
              const NormSpec X{0.5, b, p, 2.0, "X"};
              double den = 1.0;
              for (const auto& v : in) den *= input_norm(v, X);
              if (!(den > 0.0)) return 0.0;
              return output_norm(out, X) / den;
            });
  return r;
}

ProbeReport ey_bound_probe(TripleClass star, const std::vector<int>& n_maxes, int samples, std::uint64_t seed,
                           const ParameterLadder& L) {
  if (star != TripleClass::N && star != TripleClass::L)
    throw InvalidArgument("ey_bound_probe: star must be N or L");
  ProbeReport r;
  const ProbeOperator op = star == TripleClass::N ? ProbeOperator::EY_N : ProbeOperator::EY_L;
  r.estimate = to_string(op);
  r.grid_note = "Y1 / (Z0 Z0 Y0) for N, Y1 / (Z0 Y0 Y0) for L; lambda windows h=1/8";
  const NormSpec Y0 = space_Y0(L), Y1 = space_Y1(L), Z0 = space_Z0(L);
  run_cells(r, op, {L.p0}, n_maxes, samples, seed,
            [&](const std::array<SparseInput, 3>& in, const OutputSpectrum& out, double) {
              const double den = input_norm(in[0], Z0) * input_norm(in[1], star == TripleClass::N ? Z0 : Y0) *
                                 input_norm(in[2], Y0);
              if (!(den > 0.0)) return 0.0;
              return output_norm(out, Y1) / den;
            });
  return r;
}

void write_probe_csv(std::ostream& os, const ProbeReport& r) {
  os << "estimate,p,n_max,samples,seed,constant,slope\n";
  const auto prec = os.precision(12);
  for (const auto& c : r.cells) {
    auto it = r.slope.find(c.p);
    os << r.estimate << ',' << c.p << ',' << c.n_max << ',' << c.samples << ',' << c.seed << ',' << c.constant
       << ',' << (it == r.slope.end() ? 0.0 : it->second) << '\n';
  }
  os.precision(prec);
}

}  // namespace dnls

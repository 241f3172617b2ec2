#include "dnls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dnls {

namespace {

constexpr double kRadiusCap = 1e6;

double capped_exp(double x, bool& capped) {
  if (x >= std::log(kRadiusCap)) {
    capped = true;
    return kRadiusCap;
  }
  return std::exp(x);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// p-norm of nonnegative entries, with p = inf as a supremum; scaled against overflow.
template <typename Range>
double lp_combine(const Range& v, double p) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, x);
  if (mx == 0.0 || std::isinf(p)) return mx;
  double s = 0.0;
  for (double x : v) s += std::pow(x / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

}  // namespace

void ParameterLadder::check() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw AssertionFailure("ladder invariant violated: " + what);
  };
  need(b0 < b1 && b1 < 1.0, "b0 < b1 < 1");
  need(q1 < q0, "q1 < q0");
  need(r2 < r1 && r1 < r0 && r0 < 2.0, "r2 < r1 < r0 < 2");
  need(delta < 1.0 / (6.0 * p0), "delta < 1/(6 p0)");
  need(theta > 0.0 && theta < delta, "0 < theta < delta");
  need(A <= A1 && A1 <= A2 && A2 <= A3, "A <= A1 <= A2 <= A3");
}

ParameterLadder ladder(double p0, double delta, double A, std::optional<double> theta) {
  if (!(p0 >= 2.0) || !std::isfinite(p0))
    throw InvalidArgument("ladder: p0 = " + fmt(p0) + " violates 2 <= p0 < infinity");
  if (!(delta > 0.0)) throw InvalidArgument("ladder: delta = " + fmt(delta) + " violates delta > 0");
  if (!(delta < 1.0 / (6.0 * p0)))
    throw InvalidArgument("ladder: delta = " + fmt(delta) + " violates delta < 1/(6 p0) = " +
                          fmt(1.0 / (6.0 * p0)));
  if (!(A > 0.0) || A > kRadiusCap)
    throw InvalidArgument("ladder: A = " + fmt(A) + " violates 0 < A <= 1e6");
  ParameterLadder L;
  L.p0 = p0;
  L.delta = delta;
  L.b0 = 1.0 - 2.0 * delta;
  L.b1 = 1.0 - delta;
  L.q0 = 1.0 / (4.0 * delta);
  L.q1 = 1.0 / (4.5 * delta);
  L.r0 = 1.0 / (0.5 + delta);
  L.r1 = 1.0 / (0.5 + 2.0 * delta);
  L.r2 = 1.0 / (0.5 + 3.0 * delta);
  L.theta = theta.value_or(0.5 * delta);
  if (!(L.theta > 0.0 && L.theta < delta))
    throw InvalidArgument("ladder: theta = " + fmt(L.theta) + " violates 0 < theta < delta");
  L.A = A;
  L.A1 = std::max(A, capped_exp(A, L.radii_capped));
  L.A2 = std::max(L.A1, capped_exp(L.A1, L.radii_capped));
  L.A3 = std::max(L.A2, capped_exp(L.A2, L.radii_capped));
  L.check();
  return L;
}

double scaling_index(double sigma, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("scaling_index: p must be >= 1");
  return sigma + (std::isinf(p) ? 0.0 : 1.0 / p) - 0.5;
}

NormSpec space_Y0(const ParameterLadder& L) { return {0.5, 0.5, L.p0, L.r0, "Y0"}; }
NormSpec space_Y1(const ParameterLadder& L) { return {0.5, 0.5, L.p0, L.r1, "Y1"}; }
NormSpec space_Z0(const ParameterLadder& L) { return {0.5, L.b0, L.p0, L.q0, "Z0"}; }
NormSpec space_Z1(const ParameterLadder& L) { return {0.5, L.b1, L.p0, L.q0, "Z1"}; }

double fl_norm(const SpectralField& f, double sigma, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("fl_norm: p must be >= 1");
  std::vector<double> v;
  v.reserve(f.size());
  for (int k = -f.n_max(); k <= f.n_max(); ++k)
    v.push_back(std::pow(japanese(k), sigma) * std::abs(f(k)));
  return lp_combine(v, p);
}

namespace {

struct TailFit {
  bool used = false, non_integrable = false;
  double integral = 0.0;
};

// Power-law model |h| ~ C <lambda>^{-m} fitted on sample indices [i0, i1) and
// integrated from the grid edge `edge` to infinity in the q-th power.
TailFit fit_tail(const std::vector<double>& lam, const std::vector<double>& h, Index i0, Index i1,
                 double edge, double q, double peak) {
  TailFit out;
  double mx = 0.0;
  for (Index i = i0; i < i1; ++i) mx = std::max(mx, h[i]);
  if (mx <= 1e-13 * peak) return out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (Index i = i0; i < i1; ++i) {
    if (!(h[i] > 0.0)) continue;
    const double x = std::log(japanese(lam[i])), y = std::log(h[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) return out;
  const double den = n * sxx - sx * sx;
  if (!(den > 0)) return out;
  const double slope = (n * sxy - sx * sy) / den;
  const double logC = (sy - slope * sx) / n;
  const double m = -slope;
  if (!(m * q > 1.0)) {
    out.non_integrable = true;
    return out;
  }
  out.used = true;
  const double L = std::abs(edge);
  // Evaluated in log space: q logC and (1 - mq) log L are individually huge for large q.
  out.integral = std::exp(q * logC + (1.0 - m * q) * std::log(L) - std::log(m * q - 1.0));
  return out;
}

}  // namespace

XsbDetail xsb_norm_detail(const SpaceTimeField& F, const NormSpec& spec) {
  F.require_twisted();
  if (spec.spatial()) throw InvalidArgument("xsb_norm: spec lacks the modulation exponent b");
  const double b = *spec.b;
  const double q = spec.q.value_or(2.0);
  const LambdaGrid& lg = F.lambda;
  XsbDetail out;
  std::vector<double> lam(lg.n), h(lg.n), outer(F.modes());
  for (Index m = 0; m < lg.n; ++m) lam[m] = lg[m];

  for (int k = -F.n_max; k <= F.n_max; ++k) {
    const Index c = F.col(k);
    double peak = 0.0;
    for (Index m = 0; m < lg.n; ++m) {
      h[m] = std::pow(japanese(lam[m]), b) * std::abs(F.twisted(m, c));
      peak = std::max(peak, h[m]);
    }
    double inner = 0.0;
    if (peak > 0.0) {
      if (std::isinf(q)) {
        inner = peak;
      } else {
        double s = 0.0;
        for (Index m = 0; m < lg.n; ++m) {
          const double w = (m == 0 || m == lg.n - 1) ? 0.5 : 1.0;
          s += w * std::pow(h[m] / peak, q);
        }
        s *= lg.step;
        const Index tail = std::max<Index>(4, lg.n / 10);
        double extra = 0.0;
        if (lg.n >= 2 * tail) {
          for (int side = 0; side < 2; ++side) {
            const Index i0 = side == 0 ? 0 : lg.n - tail;
            const double edge = side == 0 ? lam.front() : lam.back();
            std::vector<double> scaled(h);
            for (double& x : scaled) x /= peak;
            TailFit t = fit_tail(lam, scaled, i0, i0 + tail, edge, q, 1.0);
            if (t.used) {
              ++out.tails_corrected;
              extra += t.integral;
            }
            if (t.non_integrable) ++out.tails_non_integrable;
          }
        }
        if (s + extra > 0) out.tail_share = std::max(out.tail_share, extra / (s + extra));
        inner = peak * std::pow(s + extra, 1.0 / q);
      }
    }
    outer[c] = std::pow(japanese(k), spec.s) * inner;
  }
  out.value = lp_combine(outer, spec.p);
  return out;
}

double xsb_norm(const SpaceTimeField& F, const NormSpec& spec) { return xsb_norm_detail(F, spec).value; }

namespace {

// Whether the weighted l^p (or L^q) with weight exponent s embeds into exponent (p2, s2).
bool holder_ok(double p, double s, double p2, double s2) {
  if (p <= p2) return s >= s2;
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double ip2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  return s + ip > s2 + ip2;
}

// Exponent r with 1/p2 = 1/p + 1/r, for p > p2.
double holder_r(double p, double p2) {
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double ip2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  return 1.0 / (ip2 - ip);
}

}  // namespace

bool embedding_holds(const NormSpec& from, const NormSpec& to) {
  if (from.spatial() != to.spatial()) return false;
  if (!holder_ok(from.p, from.s, to.p, to.s)) return false;
  if (from.spatial()) return true;
  return holder_ok(from.q.value_or(2.0), *from.b, to.q.value_or(2.0), *to.b);
}

double embedding_constant(const NormSpec& from, const NormSpec& to) {
  if (!embedding_holds(from, to)) throw InvalidArgument("embedding_constant: embedding does not hold");
  double C = 1.0;
  if (from.p > to.p) {
    // sum_k <k>^{-a}, a = (s - s') r
    const double r = holder_r(from.p, to.p);
    const double a = (from.s - to.s) * r;
    constexpr int N = 1 << 20;
    double s = 1.0;
    for (int k = N; k >= 1; --k) s += 2.0 * std::pow(1.0 + double(k) * k, -0.5 * a);
    s += 2.0 * std::pow(double(N), 1.0 - a) / (a - 1.0);
    C *= std::pow(s, 1.0 / r);
  }
  if (!from.spatial()) {
    const double q = from.q.value_or(2.0), q2 = to.q.value_or(2.0);
    if (q > q2) {
      // int (1 + x^2)^{-a/2} dx = sqrt(pi) Gamma((a-1)/2) / Gamma(a/2)
      const double r = holder_r(q, q2);
      const double a = (*from.b - *to.b) * r;
      const double I = std::sqrt(M_PI) * std::exp(std::lgamma(0.5 * (a - 1.0)) - std::lgamma(0.5 * a));
      C *= std::pow(I, 1.0 / r);
    }
  }
  return C;
}

}  // namespace dnls

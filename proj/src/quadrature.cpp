#include "dnls/quadrature.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <cstdio>
#include <map>
#include <mutex>

namespace dnls {

namespace {

GaussRule make_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = -z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss(n)).first;
  return it->second;
}

PVResult pv_integral(const std::function<cplx(double)>& f, double a, double b, double pole,
                     const PVOptions& opt) {
  auto regular = [&](double lo, double hi) {
    return integrate([&](double mu) { return f(mu) / (mu - pole); }, lo, hi, opt.panel, opt.order);
  };
  if (pole <= a || pole >= b) return {regular(a, b), 0.0};

  const double m = std::min(pole - a, b - pole);
  const double h0 = std::min(opt.h0, 0.5 * m);
  auto folded = [&](double u) { return (f(pole + u) - f(pole - u)) / u; };

  cplx outer = integrate(folded, h0, m, opt.panel, opt.order);
  if (pole - a > m) outer += regular(a, pole - m);
  if (b - pole > m) outer += regular(pole + m, b);

  constexpr int L = 4;
  std::array<double, L> h{};
  std::array<cplx, L> val{};
  for (int i = 0; i < L; ++i) {
    h[i] = h0 / double(1 << i);
    val[i] = outer + integrate(folded, h[i], h0, std::max(h[i], 0.05 * h0), opt.order);
  }
  // Weights cancelling the h, h^3, h^5 terms (4 levels) or h, h^3 (3 finest levels).
  Eigen::Matrix4d A4;
  for (int i = 0; i < L; ++i) {
    A4(0, i) = 1.0;
    A4(1, i) = h[i];
    A4(2, i) = std::pow(h[i], 3);
    A4(3, i) = std::pow(h[i], 5);
  }
  const Eigen::Vector4d w4 = A4.colPivHouseholderQr().solve(Eigen::Vector4d(1, 0, 0, 0));
  Eigen::Matrix3d A3;
  for (int i = 0; i < 3; ++i) {
    A3(0, i) = 1.0;
    A3(1, i) = h[i + 1];
    A3(2, i) = std::pow(h[i + 1], 3);
  }
  const Eigen::Vector3d w3 = A3.colPivHouseholderQr().solve(Eigen::Vector3d(1, 0, 0));

  cplx r4{}, r3{};
  for (int i = 0; i < L; ++i) r4 += w4[i] * val[i];
  for (int i = 0; i < 3; ++i) r3 += w3[i] * val[i + 1];
  const double spread = std::abs(r4 - r3);
  if (spread > opt.tolerance * std::max(1.0, std::abs(r4)))
  {
    char buf[160];
    std::snprintf(buf, sizeof buf, "pole=%.17g spread=%.3e value=%.17g h0=%.3g", pole, spread,
                  std::abs(r4), h0);
    throw NumericError("principal value extrapolation did not settle", buf);
  }
  return {r4, spread};
}

namespace {

// Lagrange weights for nodes 0..5 evaluated at t.
inline void lagrange6(double t, double w[6]) {
  static constexpr double denom[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
  double d[6];
  for (int j = 0; j < 6; ++j) d[j] = t - j;
  double left[6], right[6];
  left[0] = 1.0;
  for (int j = 1; j < 6; ++j) left[j] = left[j - 1] * d[j - 1];
  right[5] = 1.0;
  for (int j = 4; j >= 0; --j) right[j] = right[j + 1] * d[j + 1];
  for (int j = 0; j < 6; ++j) w[j] = left[j] * right[j] / denom[j];
}

template <typename T>
T interpolate(const std::vector<T>& v, double x0, double h, double x) {
  const Index n = Index(v.size());
  const double s = (x - x0) / h;
  Index i0 = Index(std::floor(s)) - 2;
  i0 = std::clamp<Index>(i0, 0, n - 6);
  double w[6];
  lagrange6(s - double(i0), w);
  T out{};
  for (int j = 0; j < 6; ++j) out += w[j] * v[i0 + j];
  return out;
}

}  // namespace

double UniformTable::operator()(double x) const { return interpolate(v_, x0_, h_, x); }
cplx ComplexTable::operator()(double x) const { return interpolate(v_, x0_, h_, x); }

std::vector<cplx> chirp_z(const std::vector<cplx>& x, double s0, double ds, double w0, double dw,
                          Index M, int sign) {
  const Index N = Index(x.size());
  std::vector<cplx> y(M);
  if (N == 0 || M == 0) return y;
  Index L = 1;
  while (L < N + M - 1) L <<= 1;

  using ld = long double;
  const ld sg = sign >= 0 ? 1.0L : -1.0L;
  const ld theta = sg * ld(dw) * ld(ds);
  auto cis = [](ld ph) {
    ph = std::fmod(ph, 2.0L * ld(M_PI));
    return cplx(double(std::cos(ph)), double(std::sin(ph)));
  };

  std::vector<cplx> a(L, cplx(0)), b(L, cplx(0));
  for (Index j = 0; j < N; ++j)
    a[j] = x[j] * cis(sg * ld(w0) * ld(j) * ld(ds) + theta * ld(j) * ld(j) / 2);
  for (Index n = 0; n < M; ++n) b[n] = cis(-theta * ld(n) * ld(n) / 2);
  for (Index n = 1; n < N; ++n) b[L - n] = cis(-theta * ld(n) * ld(n) / 2);

  thread_local Eigen::FFT<double> fft;
  std::vector<cplx> fa, fb, conv;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (Index i = 0; i < L; ++i) fa[i] *= fb[i];
  fft.inv(conv, fa);

  for (Index m = 0; m < M; ++m)
    y[m] = conv[m] * cis(sg * (ld(w0) * ld(s0) + ld(m) * ld(dw) * ld(s0)) + theta * ld(m) * ld(m) / 2);
  return y;
}

}  // namespace dnls

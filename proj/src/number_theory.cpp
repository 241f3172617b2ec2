#include "dnls/number_theory.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

std::vector<long long> divisors_in_ball(long long k, long long q, double rho) {
  if (k == 0) throw InvalidArgument("divisors_in_ball: k must be nonzero");
  if (!(rho >= 0.0)) throw InvalidArgument("divisors_in_ball: rho must be >= 0");
  const long long K = k < 0 ? -k : k;
  std::vector<long long> out;
  auto consider = [&](long long r) {
    if (std::abs(double(r) - double(q)) <= rho) out.push_back(r);
  };
  for (long long d = 1; d * d <= K; ++d) {
    if (K % d != 0) continue;
    const long long e = K / d;
    consider(d);
    consider(-d);
    if (e != d) {
      consider(e);
      consider(-e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Eisenstein> divisors_in_ball(const Eisenstein& k, const Eisenstein& q, double rho) {
  if (k.is_zero()) throw InvalidArgument("divisors_in_ball: k must be nonzero");
  if (!(rho >= 0.0)) throw InvalidArgument("divisors_in_ball: rho must be >= 0");
  const long long Nk = k.norm();
  const double r2 = rho * rho;
  // A divisor has N(r) <= N(k), so the disc can be clipped to |r| <= sqrt(N(k)).
  const double R = std::min(rho, std::abs(q.value()) + std::sqrt(double(Nk)));
  const std::complex<double> qc = q.value();
  // Im(a + b omega) = b sqrt(3)/2 and Re = a - b/2.
  const double s = 0.5 * std::sqrt(3.0);
  const long long bmin = (long long)std::floor((qc.imag() - R) / s) - 1;
  const long long bmax = (long long)std::ceil((qc.imag() + R) / s) + 1;
  std::vector<Eisenstein> out;
  for (long long b = bmin; b <= bmax; ++b) {
    const double re0 = qc.real() + 0.5 * double(b);
    const long long amin = (long long)std::floor(re0 - R) - 1, amax = (long long)std::ceil(re0 + R) + 1;
    for (long long a = amin; a <= amax; ++a) {
      const Eisenstein r{a, b};
      if (r.is_zero() || r.norm() > Nk) continue;
      if (double((r - q).norm()) > r2) continue;
      if (eis_divides(r, k)) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const Eisenstein& x, const Eisenstein& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

std::string SystemSpec::pattern() const {
  std::string p;
  for (int s : signs) p += s > 0 ? '+' : '-';
  return p;
}

void SystemSpec::validate() const {
  for (int s : signs)
    if (s != 1 && s != -1) throw InvalidArgument("SystemSpec: signs must be +1 or -1");
  for (long long N : shells)
    if (N < 1 || N > (1LL << 20)) throw InvalidArgument("SystemSpec: shells must lie in [1, 2^20]");
}

bool has_pairing(const SystemSpec& s, long long a, long long b, long long c) {
  const long long x[3] = {a, b, c};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (x[i] == x[j] && s.signs[i] == -s.signs[j]) return true;
  return false;
}

namespace {

bool in_shell(long long x, long long N) {
  const long long ax = x < 0 ? -x : x;
  return ax >= N && ax < 2 * N;
}

template <typename F>
void for_shell(long long N, F&& f) {
  for (long long x = -2 * N + 1; x <= -N; ++x) f(x);
  for (long long x = N; x < 2 * N; ++x) f(x);
}

}  // namespace

SystemCount count_system_solutions(const SystemSpec& spec, std::size_t max_witnesses) {
  spec.validate();
  SystemCount out;
  // Solve for the variable with the widest shell.
  int solved = 0;
  for (int i = 1; i < 3; ++i)
    if (spec.shells[i] > spec.shells[solved]) solved = i;
  const int i1 = solved == 0 ? 1 : 0, i2 = solved == 2 ? 1 : 2;
  const auto& s = spec.signs;
  for_shell(spec.shells[i1], [&](long long x1) {
    for_shell(spec.shells[i2], [&](long long x2) {
      // s_solved x = c1 - s_i1 x1 - s_i2 x2, and s = +-1 is its own inverse.
      const long long x = s[solved] * (spec.c1 - s[i1] * x1 - s[i2] * x2);
      if (!in_shell(x, spec.shells[solved])) return;
      std::array<long long, 3> t{};
      t[solved] = x;
      t[i1] = x1;
      t[i2] = x2;
      const long long q = -(s[0] * t[0] * t[0] + s[1] * t[1] * t[1] + s[2] * t[2] * t[2]);
      if (q != spec.c2 || has_pairing(spec, t[0], t[1], t[2])) return;
      ++out.count;
      if (out.witnesses.size() < max_witnesses) out.witnesses.push_back(t);
    });
  });
  return out;
}

namespace {

// floor(sqrt(n)) for n >= 0, exact for every 64-bit input.
long long isqrt(long long n) {
  long long r = (long long)std::sqrt(double(n));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

SystemCount count_system_solutions_fast(const SystemSpec& spec, std::size_t max_witnesses) {
  spec.validate();
  const auto& s = spec.signs;
  std::vector<std::array<long long, 3>> found;
  auto accept = [&](long long x0, long long x1) {
    const long long A = spec.c1 - s[0] * x0;
    const long long x2 = s[2] * (A - s[1] * x1);
    if (!in_shell(x1, spec.shells[1]) || !in_shell(x2, spec.shells[2])) return;
    if (has_pairing(spec, x0, x1, x2)) return;
    found.push_back({x0, x1, x2});
  };
  for_shell(spec.shells[0], [&](long long x0) {
    // s1 x1 + s2 x2 = A and s1 x1^2 + s2 x2^2 = B.
    const long long A = spec.c1 - s[0] * x0;
    const long long B = -spec.c2 - s[0] * x0 * x0;
    if (s[1] != s[2]) {
      // Linear in x1: 2 A x1 = B - s2 A^2.  A = 0 forces x1 = x2, a pairing.
      if (A == 0) return;
      const long long num = B - s[2] * A * A;
      if (num % (2 * A) != 0) return;
      accept(x0, num / (2 * A));
    } else {
      // 2 x1^2 - 2 s A x1 + A^2 - s B = 0, discriminant 2 s B - A^2.
      const long long D = 2 * s[1] * B - A * A;
      if (D < 0) return;
      const long long r = isqrt(D);
      if (r * r != D) return;
      const long long sA = s[1] * A;
      if ((sA + r) % 2 != 0) return;
      accept(x0, (sA + r) / 2);
      if (r != 0) accept(x0, (sA - r) / 2);
    }
  });
  std::sort(found.begin(), found.end());
  SystemCount out;
  out.count = (long long)found.size();
  for (std::size_t i = 0; i < found.size() && i < max_witnesses; ++i) out.witnesses.push_back(found[i]);
  return out;
}

SystemSpec system_through(std::array<int, 3> signs, std::array<long long, 3> shells, long long a, long long b,
                          long long c) {
  SystemSpec s;
  s.signs = signs;
  s.shells = shells;
  s.c1 = signs[0] * a + signs[1] * b + signs[2] * c;
  s.c2 = -(signs[0] * a * a + signs[1] * b * b + signs[2] * c * c);
  s.validate();
  return s;
}

double growth_fit(const std::vector<std::pair<double, double>>& counts) {
  if (counts.size() < 4) throw InvalidArgument("growth_fit: need at least four scales");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [N, c] : counts) {
    if (!(N > 0.0) || !(c > 0.0)) throw InvalidArgument("growth_fit: scales and counts must be positive");
    const double x = std::log(N), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(counts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dnls

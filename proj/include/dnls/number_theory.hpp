#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

namespace detail {
// Nearest integer to n / d (d > 0), ties toward +infinity, exact for any integer type.
template <typename I>
I div_round(const I& n, const I& d) {
  I two_n = n * 2 + d;
  I twod = d * 2;
  I q = two_n / twod;
  if ((two_n % twod != 0) && (two_n < 0)) q -= 1;  // floor division
  return q;
}
}  // namespace detail

/// a + b omega with omega = exp(2 pi i / 3), so omega^2 = -1 - omega.
template <typename I>
struct EisensteinInt {
  I a{0}, b{0};

  EisensteinInt() = default;
  EisensteinInt(I a_, I b_ = I(0)) : a(std::move(a_)), b(std::move(b_)) {}

  /// a^2 - ab + b^2
  I norm() const { return a * a - a * b + b * b; }
  EisensteinInt conj() const { return {a - b, -b}; }
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_unit() const { return norm() == 1; }
  std::complex<double> value() const {
    return {double(a) - 0.5 * double(b), 0.5 * std::sqrt(3.0) * double(b)};
  }

  friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a + y.a, x.b + y.b}; }
  friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a - y.a, x.b - y.b}; }
  friend EisensteinInt operator-(const EisensteinInt& x) { return {-x.a, -x.b}; }
  friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    const I bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
  }
  friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const EisensteinInt& x, const EisensteinInt& y) { return !(x == y); }
};

using Eisenstein = EisensteinInt<long long>;

template <typename I>
EisensteinInt<I> eis_omega() {
  return {I(0), I(1)};
}

/// The six units 1, -1, omega, -omega, omega^2, -omega^2.
template <typename I>
std::array<EisensteinInt<I>, 6> eis_units() {
  return {EisensteinInt<I>{1, 0}, EisensteinInt<I>{-1, 0}, EisensteinInt<I>{0, 1},
          EisensteinInt<I>{0, -1}, EisensteinInt<I>{-1, -1}, EisensteinInt<I>{1, 1}};
}

/// x = q y + r with N(r) < N(y): q rounds x conj(y) / N(y) coordinatewise in the basis {1, omega}.
template <typename I>
std::pair<EisensteinInt<I>, EisensteinInt<I>> eis_divrem(const EisensteinInt<I>& x, const EisensteinInt<I>& y) {
  if (y.is_zero()) throw InvalidArgument("eis_divrem: division by zero");
  const I n = y.norm();
  const EisensteinInt<I> num = x * y.conj();
  EisensteinInt<I> q{detail::div_round(num.a, n), detail::div_round(num.b, n)};
  EisensteinInt<I> r = x - q * y;
  return {q, r};
}

template <typename I>
bool eis_divides(const EisensteinInt<I>& d, const EisensteinInt<I>& k) {
  if (d.is_zero()) return false;
  return eis_divrem(k, d).second.is_zero();
}

enum class Ring { Z, Zomega };

/// Divisors r of k with |r - q| <= rho, unit multiples included.
/// Z: integer divisors found by pairing d with k/d for d <= sqrt|k|.
/// Z[omega]: lattice points of the disc |r - q| <= rho tested for exact divisibility.
/// Results are sorted (by a, then b).  k = 0 is rejected.
std::vector<long long> divisors_in_ball(long long k, long long q, double rho);
std::vector<Eisenstein> divisors_in_ball(const Eisenstein& k, const Eisenstein& q, double rho);

/// The system  s_a a + s_b b + s_c c = c1,  -(s_a a^2 + s_b b^2 + s_c c^2) = c2
/// over the dyadic shells N_j <= |x| < 2 N_j.  The opposite signs of the linear and the
/// quadratic equation are built in.
struct SystemSpec {
  std::array<int, 3> signs{-1, 1, 1};  // (s_a, s_b, s_c), each +1 or -1
  long long c1 = 0, c2 = 0;
  std::array<long long, 3> shells{1, 1, 1};  // N1, N2, N3
  std::string pattern() const;              // e.g. "-+-"
  void validate() const;
};

/// A pairing: two variables with equal values and opposite signs.
bool has_pairing(const SystemSpec& s, long long a, long long b, long long c);

struct SystemCount {
  long long count = 0;
  std::vector<std::array<long long, 3>> witnesses;  // (a, b, c), in loop order
};

/// Exact count of pairing-free solutions.  The variable on the widest shell is solved from the
/// linear equation while the other two run over their shells.
SystemCount count_system_solutions(const SystemSpec& spec, std::size_t max_witnesses = 64);

/// Same count in O(N): the first variable runs over its shell and the remaining pair is solved
/// from the linear and quadratic equations with an exact integer square root.  Witnesses are
/// sorted lexicographically.
SystemCount count_system_solutions_fast(const SystemSpec& spec, std::size_t max_witnesses = 64);

/// Constants realised by a given tuple.
SystemSpec system_through(std::array<int, 3> signs, std::array<long long, 3> shells, long long a, long long b,
                          long long c);

/// Least-squares slope of log count against log N; at least four scales.
double growth_fit(const std::vector<std::pair<double, double>>& counts);

}  // namespace dnls

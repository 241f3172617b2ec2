#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "doctest.h"
#include "dnls/number_theory.hpp"

using namespace dnls;
using boost::multiprecision::cpp_int;

namespace {

// Divisibility of k by r from the norm form alone: r | k iff N(r) divides both coordinates of k conj(r).
bool divides_by_norm(const Eisenstein& r, const Eisenstein& k) {
  const Eisenstein p = k * r.conj();
  const long long n = r.norm();
  return p.a % n == 0 && p.b % n == 0;
}

std::vector<Eisenstein> naive_eisenstein(const Eisenstein& k, const Eisenstein& q, double rho) {
  std::vector<Eisenstein> out;
  const long long Nk = k.norm();
  // N(r) >= (a^2 + b^2) / 2, so |a|, |b| <= sqrt(2 N(k)).
  const long long B = (long long)std::ceil(std::sqrt(2.0 * double(Nk))) + 1;
  for (long long a = -B; a <= B; ++a)
    for (long long b = -B; b <= B; ++b) {
      const Eisenstein r{a, b};
      if (r.is_zero() || r.norm() > Nk) continue;
      if (double((r - q).norm()) > rho * rho) continue;
      if (divides_by_norm(r, k)) out.push_back(r);
    }
  std::sort(out.begin(), out.end(), [](const Eisenstein& x, const Eisenstein& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

std::vector<long long> naive_integer(long long k, long long q, double rho) {
  std::vector<long long> out;
  const long long K = std::abs(k);
  for (long long d = 1; d <= K; ++d)
    if (K % d == 0)
      for (long long r : {-d, d})
        if (std::abs(double(r - q)) <= rho) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

bool in_shell(long long x, long long N) { return std::abs(x) >= N && std::abs(x) < 2 * N; }

// Triple loop over all three shells; the reference for both counters.
long long brute_count(const SystemSpec& s) {
  long long n = 0;
  auto shell = [](long long N) {
    std::vector<long long> v;
    for (long long x = N; x < 2 * N; ++x) {
      v.push_back(x);
      v.push_back(-x);
    }
    return v;
  };
  const auto A = shell(s.shells[0]), B = shell(s.shells[1]), C = shell(s.shells[2]);
  for (long long a : A)
    for (long long b : B)
      for (long long c : C) {
        if (s.signs[0] * a + s.signs[1] * b + s.signs[2] * c != s.c1) continue;
        if (-(s.signs[0] * a * a + s.signs[1] * b * b + s.signs[2] * c * c) != s.c2) continue;
        if (!has_pairing(s, a, b, c)) ++n;
      }
  return n;
}

SystemSpec random_system(std::mt19937_64& rng, std::array<int, 3> signs, long long N) {
  std::uniform_int_distribution<long long> mag(N, 2 * N - 1), sg(0, 1);
  auto draw = [&] { return sg(rng) ? mag(rng) : -mag(rng); };
  return system_through(signs, {N, N, N}, draw(), draw(), draw());
}

}  // namespace

TEST_CASE("Eisenstein arithmetic") {
  const Eisenstein one_plus_omega{1, 1};
  CHECK(one_plus_omega * one_plus_omega == eis_omega<long long>());
  const Eisenstein x{7, -3};
  CHECK(x * Eisenstein{1, 0} == x);
  const Eisenstein w = eis_omega<long long>();
  CHECK(w * w == Eisenstein{-1, -1});
  CHECK(w * w * w == Eisenstein{1, 0});
  for (const auto& u : eis_units<long long>()) CHECK(u.is_unit());
  // Every element of norm 1 is one of the six units.
  int units = 0;
  for (long long a = -3; a <= 3; ++a)
    for (long long b = -3; b <= 3; ++b) units += Eisenstein{a, b}.norm() == 1;
  CHECK(units == 6);
  CHECK(std::abs(Eisenstein{0, 1}.value() - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}

TEST_CASE("Euclidean division exhaustively for norms up to 100") {
  std::vector<Eisenstein> elems;
  for (long long a = -12; a <= 12; ++a)
    for (long long b = -12; b <= 12; ++b)
      if (Eisenstein{a, b}.norm() <= 100) elems.push_back({a, b});
  long long checked = 0;
  for (const auto& x : elems)
    for (const auto& y : elems) {
      if (y.is_zero()) continue;
      const auto [q, r] = eis_divrem(x, y);
      CHECK(q * y + r == x);
      CHECK(r.norm() < y.norm());
      ++checked;
    }
  CHECK(checked > 100000);
  CHECK_THROWS_AS(eis_divrem(Eisenstein{1, 0}, Eisenstein{0, 0}), InvalidArgument);
}

TEST_CASE("norm is multiplicative with wide integers") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long long> d(-(1LL << 40), 1LL << 40);
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInt<cpp_int> x{cpp_int(d(rng)), cpp_int(d(rng))}, y{cpp_int(d(rng)), cpp_int(d(rng))};
    CHECK((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("integer divisors in a ball") {
  CHECK(divisors_in_ball(12, 3, 1.0) == std::vector<long long>{2, 3, 4});
  CHECK(divisors_in_ball(12, 6, 0.0) == std::vector<long long>{6});
  CHECK(divisors_in_ball(-12, -4, 0.5) == std::vector<long long>{-4});
  CHECK_THROWS_AS(divisors_in_ball(0, 1, 1.0), InvalidArgument);

  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long long> kd(-100000, 100000), qd(-400, 400);
  std::uniform_real_distribution<double> rd(0.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    long long k = kd(rng);
    if (k == 0) k = 1;
    const long long q = qd(rng);
    const double rho = rd(rng);
    REQUIRE(divisors_in_ball(k, q, rho) == naive_integer(k, q, rho));
  }
}

TEST_CASE("Eisenstein divisors in a ball") {
  const Eisenstein two{2, 0};
  const auto got = divisors_in_ball(two, Eisenstein{1, 1}, 0.5);
  CHECK(got.size() == naive_eisenstein(two, Eisenstein{1, 1}, 0.5).size());
  // 2 is inert: its divisors are the six units and the six associates of 2.
  CHECK(divisors_in_ball(two, Eisenstein{0, 0}, 3.0).size() == 12);

  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long long> cd(-100, 100), qd(-30, 30);
  std::uniform_real_distribution<double> rd(0.0, 40.0);
  int done = 0;
  while (done < 100) {
    const Eisenstein k{cd(rng), cd(rng)};
    if (k.is_zero() || k.norm() > 10000) continue;
    const Eisenstein q{qd(rng), qd(rng)};
    const double rho = rd(rng);
    const auto a = divisors_in_ball(k, q, rho), b = naive_eisenstein(k, q, rho);
    REQUIRE(a == b);
    ++done;
  }
}

TEST_CASE("system counters agree with the triple loop") {
  std::mt19937_64 rng(51);
  const std::array<std::array<int, 3>, 4> patterns{{{-1, 1, 1}, {1, 1, -1}, {1, 1, 1}, {-1, -1, 1}}};
  for (const auto& signs : patterns)
    for (long long N : {3, 8, 16}) {
      for (int s = 0; s < 20; ++s) {
        const SystemSpec spec = random_system(rng, signs, N);
        const long long want = brute_count(spec);
        CHECK(count_system_solutions(spec).count == want);
        CHECK(count_system_solutions_fast(spec).count == want);
      }
    }
  // Mixed shells.
  for (int s = 0; s < 30; ++s) {
    std::uniform_int_distribution<long long> v(4, 7), w(16, 31), z(2, 3);
    SystemSpec spec = system_through({1, -1, 1}, {4, 16, 2}, v(rng), -w(rng), z(rng));
    CHECK(count_system_solutions_fast(spec).count == brute_count(spec));
  }
}

TEST_CASE("parity obstruction gives no solutions") {
  SystemSpec spec;
  spec.signs = {1, 1, -1};
  spec.shells = {8, 8, 8};
  spec.c1 = 7;   // a + b - c odd
  spec.c2 = -4;  // a^2 + b^2 - c^2 even
  CHECK(count_system_solutions(spec).count == 0);
  CHECK(count_system_solutions_fast(spec).count == 0);
}

TEST_CASE("flipping every variable leaves the count invariant") {
  std::mt19937_64 rng(53);
  for (int s = 0; s < 20; ++s) {
    SystemSpec spec = random_system(rng, {-1, 1, 1}, 32);
    SystemSpec flipped = spec;
    flipped.c1 = -spec.c1;
    CHECK(count_system_solutions_fast(spec).count == count_system_solutions_fast(flipped).count);
  }
}

TEST_CASE("case (a): solutions are divisor pairs of Delta / 2") {
  std::mt19937_64 rng(57);
  int tested = 0;
  while (tested < 20) {
    const long long N = 16;
    const SystemSpec spec = random_system(rng, {-1, 1, 1}, N);
    const long long l = spec.c1, Q = -spec.c2;
    const long long Delta = l * l - Q;
    if (Delta == 0) continue;
    ++tested;
    REQUIRE(Delta % 2 == 0);
    long long pairs = 0;
    for (long long x : divisors_in_ball(Delta / 2, 0, double(std::abs(Delta)))) {
      // x = l - b, y = l - c with 2 x y = Delta.
      const long long b = l - x, c = l - Delta / (2 * x), a = b + c - l;
      if (in_shell(a, N) && in_shell(b, N) && in_shell(c, N) && !has_pairing(spec, a, b, c)) ++pairs;
    }
    CHECK(pairs == count_system_solutions(spec).count);
  }
}

TEST_CASE("the three proof identities hold on enumerated witnesses") {
  std::mt19937_64 rng(59);
  long long witnesses = 0;
  for (int s = 0; s < 30; ++s) {
    for (const auto& signs : {std::array<int, 3>{-1, 1, 1}, std::array<int, 3>{1, 1, -1}, std::array<int, 3>{1, 1, 1}}) {
      const SystemSpec spec = random_system(rng, signs, 64);
      for (const auto& [a, b, c] : count_system_solutions_fast(spec).witnesses) {
        ++witnesses;
        const cpp_int A = a, B = b, C = c, l = spec.c1;
        if (signs == std::array<int, 3>{-1, 1, 1}) {
          CHECK(2 * (l - B) * (l - C) == l * l - (B * B + C * C - A * A));
        } else if (signs == std::array<int, 3>{1, 1, -1}) {
          CHECK(2 * (B - C) * (l - B) == l * l - (A * A + B * B - C * C));
        } else {
          const cpp_int u = 3 * A - l, v = 3 * B - l;
          const EisensteinInt<cpp_int> left{u, -v}, right{u + v, v};  // u - omega v, u - omega^2 v
          const auto prod = left * right;
          CHECK(prod.b == 0);
          CHECK(prod.a == u * u + u * v + v * v);
          // Expanding gives u^2 + uv + v^2 = 3 (a^2 + b^2 + c^2 - ab - bc - ca), half of 9 |x|^2 - 3 l^2.
          CHECK(2 * prod.a == 9 * (A * A + B * B + C * C) - 3 * l * l);
        }
      }
    }
  }
  CHECK(witnesses >= 90);
}

TEST_CASE("growth fit calibration") {
  CHECK(growth_fit({{1, 5}, {2, 5}, {4, 5}, {8, 5}}) == doctest::Approx(0.0));
  CHECK(growth_fit({{128, 3}, {256, 6}, {512, 12}, {1024, 24}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(growth_fit({{1, 1}, {2, 2}, {4, 4}}), InvalidArgument);
}

#include <random>

#include "doctest.h"
#include "dnls/combinatorics.hpp"
#include "dnls/interactions.hpp"
#include "dnls/random.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

TEST_CASE("class examples") {
  CHECK(classify_triple(1, 1, 1, 1) == TripleClass::H);
  const long long big = 1LL << 25;
  CHECK(classify_triple(big, 1 - big, 1, 0) == TripleClass::L);
  CHECK(classify_triple(big, 15, big - 1, 16) == TripleClass::S);
  CHECK_THROWS_AS(classify_triple(1, 0, 0, 0), InvalidArgument);
  CHECK(parse_triple_class("N") == TripleClass::N);
  CHECK_FALSE(parse_triple_class("X").has_value());
}

TEST_CASE("resonance factor examples") {
  CHECK(resonance_delta(5, -2, 2, 1) == 24);
  CHECK(resonance_delta(0, 0, 1, -1) == -2);
  const CubicTriple t = make_triple(5, -2, 2, 1);
  CHECK(t.delta == 2 * (5 - 2) * (5 - 1));
  CHECK_FALSE(t.diagonal);
}

TEST_CASE("V3 membership") {
  CHECK(in_V3(3, 3, 3, 3));
  CHECK(in_V3(1, 2, 3, 0));
  CHECK_FALSE(in_V3(1, 2, 0, 3));  // |k2| < |k3|
  CHECK_FALSE(in_V3(2, 1, 2, 1));  // k = k2
  CHECK_FALSE(in_V3(1, 0, 0, 0));  // sum rule broken
}

namespace {

// Naive oracle: loop over every (k, k1, k2) in the band and test V3 membership directly.
SpectralField naive_cubic(const SpectralField& v1, const SpectralField& v2, const SpectralField& v3,
                          const Multiplier& M, std::optional<TripleClass> cls) {
  const int n = v1.n_max();
  SpectralField out(n);
  for (int k = -n; k <= n; ++k)
    for (int k1 = -n; k1 <= n; ++k1)
      for (int k2 = -n; k2 <= n; ++k2) {
        const int k3 = k + k1 - k2;
        if (k3 < -n || k3 > n || !in_V3(k, k1, k2, k3)) continue;
        if (cls && classify_triple(k, k1, k2, k3) != *cls) continue;
        out(k) += double(k1) * M(k, k1, k2, k3) * std::conj(v1(k1)) * v2(k2) * v3(k3);
      }
  return out;
}

double max_abs(const SpectralField& f) { return f.modes().cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("cubic sums match the naive oracle, with and without a multiplier") {
  std::mt19937_64 rng(99);
  const int n = 12;
  const SpectralField a = smooth_random_field(n, 1.0, rng, 0.2), b = smooth_random_field(n, 1.0, rng, 0.2),
                      c = smooth_random_field(n, 1.0, rng, 0.2);
  const Multiplier unit = Multiplier::unit(3);
  const Multiplier phase(
      3, [](std::span<const long long> t) { return std::polar(1.0, 0.1 * double(t[0] - 2 * t[2] + t[3])); }, 1.0,
      "phase");
  for (const Multiplier* M : {&unit, &phase}) {
    const SpectralField want = naive_cubic(a, b, c, *M, std::nullopt);
    CHECK(max_abs(cubic_apply(CubicKind::Full, a, b, c, *M) - want) <= 1e-12 * max_abs(want));
    for (TripleClass cl : {TripleClass::H, TripleClass::L, TripleClass::S, TripleClass::N}) {
      const SpectralField part = naive_cubic(a, b, c, *M, cl);
      CHECK(max_abs(cubic_apply(cubic_kind(cl), a, b, c, *M) - part) <= 1e-12 * (1.0 + max_abs(want)));
    }
  }
}

TEST_CASE("class split is bit exact") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField a = smooth_random_field(16, 1.0, rng), b = smooth_random_field(16, 1.0, rng),
                        c = smooth_random_field(16, 1.0, rng);
    const CubicParts p = cubic_parts(a, b, c, Multiplier::unit(3));
    const SpectralField sum = ((p.H + p.L) + p.S) + p.N;
    CHECK((sum.modes() - cubic_apply(CubicKind::Full, a, b, c, Multiplier::unit(3)).modes()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("resonance groups reproduce the class sums at t = 0") {
  const int n = 6;
  std::mt19937_64 rng(4);
  const SpectralField a = smooth_random_field(n, 1.0, rng), b = smooth_random_field(n, 1.0, rng),
                      c = smooth_random_field(n, 1.0, rng);
  for (TripleClass cl : {TripleClass::H, TripleClass::N, TripleClass::L}) {
    SpectralField acc(n);
    for (const auto& g : resonance_groups(n, cl, Multiplier::unit(3))) {
      for (std::size_t i = 0; i < g.triples.size(); ++i) {
        const auto& t = g.triples[i];
        CHECK(resonance_delta(g.k, t[0], t[1], t[2]) == g.delta);
        acc(int(g.k)) += g.coef[i] * std::conj(a(int(t[0]))) * b(int(t[1])) * c(int(t[2]));
      }
    }
    const SpectralField want = naive_cubic(a, b, c, Multiplier::unit(3), cl);
    CHECK(max_abs(acc - want) <= 1e-12 * (1.0 + max_abs(want)));
  }
}

TEST_CASE("quintic sums: single mode, direct against pseudospectral") {
  const int n = 5;
  const cplx a(0.3, -0.4);
  const SpectralField e1 = SpectralField::single_mode(n, 1, a);
  const SpectralField q = quintic_apply(e1, e1, e1, e1, e1, Multiplier::unit(5));
  // |a e^{ix}|^4 a e^{ix}
  CHECK(std::abs(q(1) - std::norm(a) * std::norm(a) * a) < 1e-15);
  CHECK(max_abs(q) == doctest::Approx(std::abs(q(1))));

  std::mt19937_64 rng(8);
  const SpectralField v = smooth_random_field(n, 1.0, rng);
  const SpectralField fast = quintic_apply(v, v, v, v, v, Multiplier::unit(5));
  const SpectralField slow = quintic_apply(v, v, v, v, v, Multiplier::unit(5), true);
  CHECK(max_abs(fast - slow) <= 1e-13 * max_abs(slow));
}

TEST_CASE("pairing detection and index selection") {
  PairingChoice c = pairing_and_index({9, {7, 1, 2, 3, 4}});
  CHECK(c.pairings.empty());
  CHECK(c.index == 1);
  c = pairing_and_index({2, {5, 5, 1, 2, 3}});
  REQUIRE(c.pairings.size() == 1);
  CHECK(c.index == 5);
  c = pairing_and_index({1, {5, 5, 2, 2, 1}});
  CHECK(c.index == 5);
  CHECK_THROWS_AS(pairing_and_index({0, {1, 1, 1, 1, 1}}), InvalidArgument);
}

TEST_CASE("class inequality items hold at K = 64") {
  const Prop23Report r = verify_prop23(64);
  CHECK(r.triples > 0);
  CHECK(r.partition_violations == 0);
  CHECK(r.delta_mismatches == 0);
  CHECK(r.exact_items_ok());
  long long total = 0;
  for (const auto& [name, n] : r.class_counts) total += n;
  CHECK(total == r.triples);
}

TEST_CASE("triple enumeration count matches a naive scan at K = 10") {
  const long long K = 10;
  long long n = 0;
  for (long long k = -K; k <= K; ++k)
    for (long long k1 = -K; k1 <= K; ++k1)
      for (long long k2 = -K; k2 <= K; ++k2)
        for (long long k3 = -K; k3 <= K; ++k3) n += in_V3(k, k1, k2, k3);
  CHECK(verify_prop23(K).triples == n);
}

TEST_CASE("chained pairs classify with no structural violations at K = 16") {
  const Prop24Report r = verify_prop24(16);
  CHECK(r.chains > 0);
  CHECK(r.unclassified == 0);
  CHECK(r.structural_violations() == 0);
}

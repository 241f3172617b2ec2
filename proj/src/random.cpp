#include "dnls/random.hpp"

#include <cmath>
#include <string>

#include "dnls/solver.hpp"

namespace dnls {

namespace {

// FNV-1a: a fixed, platform-independent label hash (std::hash is not).
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::mt19937_64 RngStreams::stream(std::string_view label) const {
  const std::uint64_t h = fnv1a(label);
  std::seed_seq seq{std::uint32_t(seed_), std::uint32_t(seed_ >> 32), std::uint32_t(h), std::uint32_t(h >> 32)};
  return std::mt19937_64(seq);
}

SpectralField smooth_random_field(int n_max, double amplitude, std::mt19937_64& rng, double decay) {
  std::normal_distribution<double> normal;
  SpectralField u(n_max);
  for (int k = -n_max; k <= n_max; ++k) {
    const double re = normal(rng), im = normal(rng);
    u(k) = cplx(re, im) * std::exp(-decay * std::abs(double(k)));
  }
  const double s = sup_norm(u);
  if (s > 0.0) u *= cplx(amplitude / s);
  return u;
}

SpectralField corpus_field(std::uint64_t seed, int index, int n_max, double amplitude) {
  auto rng = RngStreams(seed).stream("corpus/" + std::to_string(index));
  return smooth_random_field(n_max, amplitude, rng);
}

}  // namespace dnls

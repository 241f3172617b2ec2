#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dnls/fields.hpp"

namespace dnls {

/// One seeded generator split into independent streams by fixed string labels, so that adding
/// draws in one module never shifts the numbers another module sees.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }
  std::mt19937_64 stream(std::string_view label) const;

 private:
  std::uint64_t seed_;
};

/// Coefficients (g_k + i h_k) e^{-decay |k|} with standard normal g, h, rescaled so that the
/// physical sup norm equals `amplitude`.
SpectralField smooth_random_field(int n_max, double amplitude, std::mt19937_64& rng, double decay = 1.0);

/// Ten-or-so smooth data sets drawn from the stream "corpus/<index>"; shared by tests and the CLI.
SpectralField corpus_field(std::uint64_t seed, int index, int n_max = 32, double amplitude = 0.1);

}  // namespace dnls

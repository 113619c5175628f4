#pragma once

#include <cstdint>
#include <random>

namespace liftgap {

/// The fixed PRNG behind every seeded routine: std::mt19937_64 seeded with
/// the 64-bit seed. Derived draws avoid std distributions (their output is
/// implementation-defined) so samples are reproducible across toolchains.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of trial `index` under master seed `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + index * 0x9E3779B97F4A7C15ULL);
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

/// True with probability num/den exactly (0 <= num <= den, den > 0).
inline bool bernoulli(Rng& rng, std::uint64_t num, std::uint64_t den) { return uniform_below(rng, den) < num; }

}  // namespace liftgap

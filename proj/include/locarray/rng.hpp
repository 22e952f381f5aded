#pragma once

#include <cstdint>
#include <random>

namespace locarray {

using Rng = std::mt19937_64;

// Unbiased draw from [0, n).  std::uniform_int_distribution is
// implementation-defined, so seeded runs would not reproduce across
// standard libraries; this rejection sampler does.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline int random_level(Rng &rng, int levels) {
  return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(levels)));
}

// Uniform draw from [0, 1) with 53 random bits; reproducible for the same
// reason as uniform_below.
inline double uniform_unit(Rng &rng) {
  return static_cast<double>(uniform_below(rng, std::uint64_t{1} << 53)) *
         (1.0 / 9007199254740992.0);
}

// Derives independent sub-seeds from one master seed (splitmix64 finalizer),
// so repeated stages get uncorrelated streams while staying reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace locarray

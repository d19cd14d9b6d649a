#pragma once

#include <cstdint>
#include <random>

namespace cnflab {

// Counter-based seed derivation (splitmix64 finalizer): independent streams
// for retry i of a master seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation, so streams are portable.
[[nodiscard]] inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace cnflab

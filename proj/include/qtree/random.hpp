#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "qtree/distribution.hpp"

namespace qtree {

/// Uniform double in the open interval (0, 1) built from the top 53 bits.
inline double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Unbiased draw from [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// i.i.d. uniform(0,1) weights normalized to sum 1 (float mode).
Distribution random_distribution(std::size_t n, std::uint64_t seed);

}  // namespace qtree

#pragma once

#include <cstdint>
#include <random>

namespace wlc {

/// The pinned generator: 64-bit Mersenne Twister. Runs are reproducible
/// given the seed because the bounded draw below does not depend on the
/// standard library's distribution implementations.
using RandomStream = std::mt19937_64;

/// Uniform integer in {1, ..., m} by rejection on raw 64-bit words.
inline std::uint64_t draw_uniform(RandomStream& rng, std::uint64_t m) {
  // Reject the top (2^64 mod m) words so every residue is equally likely.
  const std::uint64_t threshold = (0 - m) % m;
  for (;;) {
    const std::uint64_t word = rng();
    if (word >= threshold) return word % m + 1;
  }
}

}  // namespace wlc

#pragma once

#include <cstdint>
#include <random>

namespace shotsel {

/// Seeded random stream used by every stochastic component. Each concurrent
/// consumer owns its own instance.
using Rng = std::mt19937_64;

/// Derives an independent seed from a master seed and a stream index
/// (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace shotsel

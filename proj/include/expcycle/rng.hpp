#pragma once

#include <cstdint>

namespace expcycle {

/// SplitMix64 (Steele, Lea & Flood's mixer). Chosen for the survey
/// sampler because the algorithm is fixed, tiny and platform-independent,
/// so seeded runs reproduce bit-for-bit everywhere.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

/// The SplitMix64 output finalizer as a standalone mixing function.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace expcycle

#pragma once

#include <cstdint>

#include "cev/normal.hpp"

namespace cev {

// Counter-based random stream: draw i is mix64(seed + (i+1) * GAMMA), the
// SplitMix64 output function applied at an arbitrary counter position. Any
// draw can be evaluated independently of the rest, so partitioning a
// simulation across workers cannot change its output.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Uniform variate strictly inside (0, 1).
  double uniform_open(std::uint64_t index) const {
    return (static_cast<double>(mix(seed_ + (index + 1) * kGamma) >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal variate by inverse-cdf transform of uniform_open(index).
  double normal(std::uint64_t index) const { return std_normal_quantile(uniform_open(index)); }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  // Deterministic sub-seed for a salted child stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix(seed + (salt + 1) * kGamma);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t seed_;
};

}  // namespace cev

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace stylestat {

/// SplitMix64 finalizer. Bijective on u64 with strong avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Random-access word stream: value at (seed, index) with no carried state,
/// so parallel consumers can pull arbitrary indices and still agree bitwise
/// with a sequential run.
inline std::uint64_t word_at(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  return mix64(mix64(seed + golden) + (index + 1) * golden);
}

/// Uniform on [0, 1), 53-bit resolution.
inline double uniform01_at(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(word_at(seed, index) >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1]; safe under log().
inline double uniform_open01_at(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>((word_at(seed, index) >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch), consuming two words per
/// variate. Indexed access keeps the stream splittable: variate i depends on
/// words 2i and 2i+1 only.
inline double normal_at(std::uint64_t seed, std::uint64_t index) {
  const double u1 = uniform_open01_at(seed, 2 * index);
  const double u2 = uniform01_at(seed, 2 * index + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

/// Sequential convenience wrapper over the indexed stream.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_word() { return word_at(seed_, counter_++); }
  double next_uniform01() { return uniform01_at(seed_, counter_++); }

  /// Uniform on [-bound, bound].
  double next_symmetric(double bound) {
    return bound * (2.0 * next_uniform01() - 1.0);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace stylestat

#pragma once

#include <cstdint>

namespace adlab {

/**
 * Counter-based deterministic generator (splitmix64).
 *
 * Output i of stream s under seed k is mix(h(k, s) + (i+1) * GAMMA), so the
 * sequence depends only on (seed, stream, counter) and is identical across
 * platforms.  Reports record the generator name, seed, and stream id.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1)) ^ mix(stream + 0xD1B54A32D192ED03ull)) {}

  static constexpr const char* name() { return "splitmix64"; }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Unbiased draw from [0, bound) via rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace adlab

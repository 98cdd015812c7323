#pragma once

#include <cmath>
#include <cstdint>

namespace pcvi {

// SplitMix64. Small, fast, and counter-based: the state advances by a fixed
// odd constant and the output is a bijective mix of the state, so a stream
// is fully determined by its 64-bit seed. Derived streams (one per sampled
// photon) are obtained by mixing (seed, salt, index), which keeps Monte Carlo
// output byte-identical for a given seed no matter how work is partitioned
// across threads.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log argument.
  double next_open_double() { return 1.0 - next_double(); }

  // Exponential with unit mean.
  double next_exp() { return -std::log(next_open_double()); }

  // Gamma(shape, 1) for small integer shape, as a sum of exponentials.
  double next_gamma_int(int shape) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum += next_exp();
    return sum;
  }

  bool next_bool() { return (next_u64() & 1ULL) != 0; }
};

inline std::uint64_t mix_u64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent substream for (seed, salt, index).
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t salt,
                                std::uint64_t index) {
  return SplitMix64(mix_u64(mix_u64(seed ^ (salt * 0xD6E8FEB86659FD93ULL)) ^ index));
}

} // namespace pcvi

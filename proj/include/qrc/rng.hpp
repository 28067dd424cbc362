#pragma once

// Counter-based random number generation. Every draw is a pure function of
// (key, counter), so streams can be forked by value and replayed exactly.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qrc {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream key from a master seed and a stream tag.
// Changing what one stream is used for never perturbs the others.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t tag) {
  return mix64(master ^ mix64(tag ^ 0xd1342543de82ef95ULL));
}

// Stream tags for the three seed families derived from a master seed.
inline constexpr std::uint64_t kCouplingStream = 0x636f7570ULL;  // "coup"
inline constexpr std::uint64_t kInputStream = 0x696e7075ULL;     // "inpu"
inline constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;     // "nois"

struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  CounterRng() = default;
  explicit CounterRng(std::uint64_t k, std::uint64_t c = 0) : key(k), counter(c) {}

  std::uint64_t next_u64() {
    return mix64(key + (++counter) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes two counter positions.
  double normal() {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

}  // namespace qrc

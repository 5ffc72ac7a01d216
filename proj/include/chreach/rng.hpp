#pragma once

#include "chreach/core.hpp"

#include <cstdint>

namespace chreach {

/// Counter-based 64-bit generator (SplitMix64).
///
/// Output i of stream `seed` is mix(seed + (i+1)*0x9E3779B97F4A7C15) with the
/// standard SplitMix64 finalizer, so any language can reproduce a stream from
/// (seed, index) alone. The byte-exact definition is documented in the README.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), counter_(0) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Stateless access: output at a given counter position.
  static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
  }

  /// Derive an independent stream seed (for per-sample substreams).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ at(0x243F6A8885A308D3ull, stream));
  }

  std::uint64_t next_u64() { return at(seed_, counter_++); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (one value per call, pair cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Vec normal_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace chreach

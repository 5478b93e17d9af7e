#pragma once

#include <cmath>
#include <cstdint>

namespace mfmaps {

/// Deterministic 64-bit stream (splitmix64). Every randomized scenario in the
/// library draws from this generator so that a fixed seed reproduces reports
/// byte for byte on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller (fixed algorithm, unlike
  /// std::normal_distribution whose stream is implementation-defined).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Derive an independent child stream; used to give each scenario its own
  /// stream so scenario order never shifts the draws of its neighbours.
  SplitMix64 fork(std::uint64_t salt) {
    return SplitMix64(next_u64() ^ (0x9E3779B97F4A7C15ULL * (salt + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mfmaps

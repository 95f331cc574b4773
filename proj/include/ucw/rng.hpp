#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ucw {

/// Deterministic 64-bit generator (SplitMix64). Every campaign derives all of
/// its randomness from a single user seed so runs are replayable bit-for-bit;
/// per-trial sub-streams are derived with `derive`, never by sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller (one value per call).
  double normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Random direction on the unit (n-1)-sphere.
  std::vector<double> direction(std::size_t n) {
    std::vector<double> v(n);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& c : v) {
        c = normal();
        norm2 += c * c;
      }
    } while (norm2 < 1e-30);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : v) c *= inv;
    return v;
  }

  /// Independent sub-stream for (stream, index); used so that trial i of
  /// campaign s sees the same draws regardless of evaluation order.
  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = mix(seed ^ 0x60bee2bee120fc15ULL);
    s = mix(s ^ (0xa3b195354a39b70dULL * (stream + 1)));
    s = mix(s ^ (0x1b03738712fad5c9ULL * (index + 1)));
    return Rng(s);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t state_;
};

}  // namespace ucw

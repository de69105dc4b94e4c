#pragma once

#include <cmath>
#include <cstdint>

namespace cosmax {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
// whole algorithm fits in four lines and can be restated exactly in any
// language, which keeps generated fixtures reproducible outside this codebase.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]: top 53 bits, shifted up by one ulp so log() is safe.
  double next_uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Standard normals via the Box-Muller transform; the second variate of each
// pair is cached so draws map one-to-one onto uniform pairs.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.next_uniform();
    const double u2 = rng_.next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static constexpr double pi = 3.14159265358979323846;
  SplitMix64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cosmax

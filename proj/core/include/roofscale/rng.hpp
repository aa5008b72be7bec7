#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "roofscale/common.hpp"

namespace roofscale {

// Deterministic random source. The mt19937_64 engine is fully specified by
// the C++ standard; the variate constructions below avoid the std
// distributions, whose output is implementation-defined, so a fixed seed
// yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Multiply-shift; slight modulo bias is
  // irrelevant for sampling purposes and keeps the draw count fixed.
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  // Standard normal via Box-Muller; fixed two-draw consumption per pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    if (u1 < 0x1.0p-80) u1 = 0x1.0p-80;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cplx(re, im);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives a decorrelated child seed (splitmix64 finalizer on seed + index);
// used to give every optimizer restart its own stream so results do not
// depend on thread scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace roofscale

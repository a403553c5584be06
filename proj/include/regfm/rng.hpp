#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "regfm/types.hpp"

namespace regfm {

/* Deterministic variate stream: mt19937_64 with explicit mappings, so a seed
 * reproduces the same values regardless of the platform's <random>
 * distribution implementations.  Draw order is part of the contract. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /* Uniform on (0, 1), strictly inside the open interval. */
  double u01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  /* Uniform on (-1, 1), strictly inside the open interval. */
  double upm1() { return 2.0 * u01() - 1.0; }

  /* Uniform on (lo, hi). */
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  /* Standard normal via Box-Muller; consumes two uniforms per call. */
  double normal() {
    const double u1 = u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  /* Circular complex Gaussian with E|z|^2 = 1. */
  Complex cgauss() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
  }

 private:
  static constexpr double kTwoPi = 6.28318530717958647692;
  std::mt19937_64 engine_;
};

}  // namespace regfm

#pragma once

// Seeded RNG with fixed bit-level extraction so identical seeds give
// identical streams on every platform (std distributions are
// implementation-defined, which would break byte-identical artifacts).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dqnet/algebra.hpp"

namespace dqnet {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; draws two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Raw engine output, for deriving child seeds.
  std::uint64_t next_seed() { return engine_(); }

  // Uniform direction on the unit sphere.
  Point3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dqnet

#pragma once

// Lorenz-system data generation, sliding-window dataset construction with
// per-algebra encodings, and the rigid-transformed test-set variants.

#include <cstdint>
#include <string>
#include <vector>

#include "dqnet/algebra.hpp"
#include "dqnet/nn.hpp"

namespace dqnet {

struct LorenzParams {
  double sigma{10.0};
  double beta{8.0 / 3.0};
  double rho{28.0};
};

struct Trajectory {
  std::vector<Point3> points;
  double dt{0.01};
  double t0{0.0};

  std::size_t size() const { return points.size(); }
};

enum class VariantKind { kOriginal, kTranslated, kRotated, kTranslatedRotated };

std::string variant_name(VariantKind v);
VariantKind variant_from_name(const std::string& name);

struct TestVariant {
  VariantKind kind{VariantKind::kOriginal};
  RigidTransform transform{};
  Trajectory trajectory;
};

// (sigma(y-x), x(rho-z)-y, xy-beta z)
Point3 lorenz_derivative(const Point3& p, const LorenzParams& params);

// Classic RK4; returns n points including x0. Throws NonFiniteStateError on
// blow-up, ConfigError on dt <= 0 or n < 1.
Trajectory integrate_rk4(const LorenzParams& params, const Point3& x0, double dt, int n);

// First floor(10%) of the points go to train, the rest to test; contiguous.
// Throws TooShortError below 30 points.
struct TrajectorySplit {
  Trajectory train;
  Trajectory test;
};
TrajectorySplit split_train_test(const Trajectory& t);

// 2-step sliding window: inputs are positions (t-1, t), target is t+1.
//   real: 6 -> 3 reals;  quat: 2 -> 1 pure quaternions;
//   dq: 1 -> 1 dual quaternion (t-1 primal / t dual, target primal-only).
WindowDataset encode_windows(const Trajectory& t, Algebra a);

// Reads the 3 predicted coordinates back out of a model output vector.
Point3 decode_prediction(Algebra a, const std::vector<double>& output);

// Translation components uniform in [-range, range] when enabled; rotation a
// uniform axis with angle uniform in [0, 2*pi) when enabled.
RigidTransform random_rigid_transform(std::uint64_t seed, double translation_range,
                                      bool with_rotation, bool with_translation);

// Maps every point through transform_point(dq_from_rigid(g), .).
Trajectory apply_transform(const Trajectory& t, const RigidTransform& g);

// The four test sets: original, translated, rotated, translated+rotated.
// One translation and one rotation are drawn once and shared by ii-iv;
// iv rotates about the origin first and then translates.
std::vector<TestVariant> build_test_variants(const Trajectory& test, std::uint64_t seed,
                                             double translation_range);

}  // namespace dqnet

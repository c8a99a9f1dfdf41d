#include "dqnet/lorenz.hpp"

#include <cmath>
#include <numbers>

#include "dqnet/rng.hpp"

namespace dqnet {

std::string variant_name(VariantKind v) {
  switch (v) {
    case VariantKind::kOriginal: return "original";
    case VariantKind::kTranslated: return "translated";
    case VariantKind::kRotated: return "rotated";
    case VariantKind::kTranslatedRotated: return "translated_rotated";
  }
  return "original";
}

VariantKind variant_from_name(const std::string& name) {
  if (name == "original") return VariantKind::kOriginal;
  if (name == "translated") return VariantKind::kTranslated;
  if (name == "rotated") return VariantKind::kRotated;
  if (name == "translated_rotated") return VariantKind::kTranslatedRotated;
  throw ConfigError("unknown test variant: " + name);
}

Point3 lorenz_derivative(const Point3& p, const LorenzParams& params) {
  return {params.sigma * (p.y - p.x), p.x * (params.rho - p.z) - p.y,
          p.x * p.y - params.beta * p.z};
}

Trajectory integrate_rk4(const LorenzParams& params, const Point3& x0, double dt, int n) {
  if (dt <= 0.0) throw ConfigError("integrate_rk4: dt must be positive");
  if (n < 1) throw ConfigError("integrate_rk4: need at least one point");
  Trajectory t;
  t.dt = dt;
  t.points.reserve(static_cast<std::size_t>(n));
  Point3 x = x0;
  t.points.push_back(x);
  for (int i = 1; i < n; ++i) {
    const Point3 k1 = lorenz_derivative(x, params);
    const Point3 k2 = lorenz_derivative(x + 0.5 * dt * k1, params);
    const Point3 k3 = lorenz_derivative(x + 0.5 * dt * k2, params);
    const Point3 k4 = lorenz_derivative(x + dt * k3, params);
    x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z)) {
      throw NonFiniteStateError("integrate_rk4: state blew up at step " + std::to_string(i));
    }
    t.points.push_back(x);
  }
  return t;
}

TrajectorySplit split_train_test(const Trajectory& t) {
  if (t.size() < 30) throw TooShortError("split_train_test: need at least 30 points");
  const std::size_t n_train = t.size() / 10;
  TrajectorySplit split;
  split.train.dt = split.test.dt = t.dt;
  split.train.t0 = t.t0;
  split.test.t0 = t.t0 + static_cast<double>(n_train) * t.dt;
  split.train.points.assign(t.points.begin(), t.points.begin() + static_cast<long>(n_train));
  split.test.points.assign(t.points.begin() + static_cast<long>(n_train), t.points.end());
  return split;
}

WindowDataset encode_windows(const Trajectory& t, Algebra a) {
  if (t.size() < 3) throw TooShortError("encode_windows: need at least 3 points");
  WindowDataset data;
  data.algebra = a;
  switch (a) {
    case Algebra::kReal:
      data.input_units = 6;
      data.target_units = 3;
      break;
    case Algebra::kQuaternion:
      data.input_units = 2;
      data.target_units = 1;
      break;
    case Algebra::kDualQuaternion:
      data.input_units = 1;
      data.target_units = 1;
      break;
  }
  const std::size_t n_samples = t.size() - 2;
  data.inputs.reserve(n_samples);
  data.targets.reserve(n_samples);
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    const Point3& a0 = t.points[i];
    const Point3& a1 = t.points[i + 1];
    const Point3& a2 = t.points[i + 2];
    switch (a) {
      case Algebra::kReal:
        data.inputs.push_back({a0.x, a0.y, a0.z, a1.x, a1.y, a1.z});
        data.targets.push_back({a2.x, a2.y, a2.z});
        break;
      case Algebra::kQuaternion:
        // Two pure-quaternion inputs, one pure-quaternion target.
        data.inputs.push_back({0.0, a0.x, a0.y, a0.z, 0.0, a1.x, a1.y, a1.z});
        data.targets.push_back({0.0, a2.x, a2.y, a2.z});
        break;
      case Algebra::kDualQuaternion:
        // Position t-1 in the primal vector part, position t in the dual one;
        // the target carries t+1 in the primal part and a zero dual part.
        data.inputs.push_back({0.0, a0.x, a0.y, a0.z, 0.0, a1.x, a1.y, a1.z});
        data.targets.push_back({0.0, a2.x, a2.y, a2.z, 0.0, 0.0, 0.0, 0.0});
        break;
    }
  }
  return data;
}

Point3 decode_prediction(Algebra a, const std::vector<double>& output) {
  switch (a) {
    case Algebra::kReal:
      if (output.size() != 3) throw DimensionMismatchError("decode_prediction: expected 3 reals");
      return {output[0], output[1], output[2]};
    case Algebra::kQuaternion:
      if (output.size() != 4) throw DimensionMismatchError("decode_prediction: expected 4 reals");
      return {output[1], output[2], output[3]};
    case Algebra::kDualQuaternion:
      if (output.size() != 8) throw DimensionMismatchError("decode_prediction: expected 8 reals");
      return {output[1], output[2], output[3]};
  }
  throw DimensionMismatchError("decode_prediction: bad algebra");
}

RigidTransform random_rigid_transform(std::uint64_t seed, double translation_range,
                                      bool with_rotation, bool with_translation) {
  if (translation_range <= 0.0) {
    throw ConfigError("random_rigid_transform: translation_range must be positive");
  }
  Rng rng(seed);
  // Draw order is fixed (rotation stream first) so disabling one component
  // does not shift the other.
  const Point3 axis = rng.unit_vector();
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double tx = rng.uniform(-translation_range, translation_range);
  const double ty = rng.uniform(-translation_range, translation_range);
  const double tz = rng.uniform(-translation_range, translation_range);

  RigidTransform g;
  if (with_rotation) g.rotation = quat_from_axis_angle(axis, angle);
  if (with_translation) g.translation = {tx, ty, tz};
  return g;
}

Trajectory apply_transform(const Trajectory& t, const RigidTransform& g) {
  const DualQuaternion dq = dq_from_rigid(g);
  Trajectory out;
  out.dt = t.dt;
  out.t0 = t.t0;
  out.points.reserve(t.size());
  for (const Point3& p : t.points) out.points.push_back(transform_point(dq, p));
  return out;
}

std::vector<TestVariant> build_test_variants(const Trajectory& test, std::uint64_t seed,
                                             double translation_range) {
  const RigidTransform both = random_rigid_transform(seed, translation_range, true, true);
  const RigidTransform only_t{Quaternion::identity(), both.translation};
  const RigidTransform only_r{both.rotation, Point3{}};

  std::vector<TestVariant> variants;
  variants.push_back({VariantKind::kOriginal, RigidTransform::identity(), test});
  variants.push_back({VariantKind::kTranslated, only_t, apply_transform(test, only_t)});
  variants.push_back({VariantKind::kRotated, only_r, apply_transform(test, only_r)});
  variants.push_back({VariantKind::kTranslatedRotated, both, apply_transform(test, both)});
  return variants;
}

}  // namespace dqnet

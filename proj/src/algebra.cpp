#include "dqnet/algebra.hpp"

#include <cmath>
#include <numbers>

namespace dqnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// First component of |v| exceeding the tolerance, or -1 when none does.
int first_significant_component(const Point3& v, double tol) {
  if (std::abs(v.x) > tol) return 0;
  if (std::abs(v.y) > tol) return 1;
  if (std::abs(v.z) > tol) return 2;
  return -1;
}

double component(const Point3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); }

}  // namespace

Quaternion normalized(const Quaternion& q) {
  const double n = norm(q);
  if (n <= kNormEps) {
    throw ZeroNormError("cannot normalize a zero-norm quaternion");
  }
  return (1.0 / n) * q;
}

Quaternion quat_from_axis_angle(const Point3& axis, double theta) {
  if (std::abs(norm(axis) - 1.0) > kUnitTol) {
    throw NonUnitAxisError("rotation axis must be a unit vector");
  }
  const double half = 0.5 * theta;
  const double s = std::sin(half);
  return {std::cos(half), s * axis.x, s * axis.y, s * axis.z};
}

Point3 rotate_point(const Quaternion& q, const Point3& p) {
  if (std::abs(norm(q) - 1.0) > kUnitTol) {
    throw NonUnitQuaternionError("rotate_point requires a unit quaternion");
  }
  const Quaternion r = q * Quaternion::pure(p) * conj(q);
  return r.vec();
}

DualQuaternion dq_from_screw(const ScrewParams& s) {
  const bool has_motion = s.theta != 0.0 || s.slide != 0.0;
  const double moment_norm = norm(s.moment);
  if (!has_motion && moment_norm > kUnitTol) {
    throw InvalidScrewError("no motion but nonzero axis moment: axis is ambiguous");
  }
  if (has_motion && std::abs(norm(s.direction) - 1.0) > kUnitTol) {
    throw InvalidScrewError("screw direction must be a unit vector");
  }

  // Expansion of cos(theta_hat/2) + h_hat sin(theta_hat/2) with
  // theta_hat/2 = theta/2 + eps*slide/2 and h_hat = direction + eps*moment:
  //   primal = (cos(theta/2), sin(theta/2) u)
  //   dual   = (-(s/2) sin(theta/2), (s/2) cos(theta/2) u + sin(theta/2) m)
  const double half = 0.5 * s.theta;
  const double c = std::cos(half);
  const double sn = std::sin(half);
  const double hs = 0.5 * s.slide;
  const Point3 dual_vec = hs * c * s.direction + sn * s.moment;
  return {Quaternion{c, sn * s.direction.x, sn * s.direction.y, sn * s.direction.z},
          Quaternion{-hs * sn, dual_vec.x, dual_vec.y, dual_vec.z}};
}

ScrewParams screw_from_dq(const DualQuaternion& q_in) {
  if (!is_rigid_unit(q_in)) {
    throw NonUnitDualQuaternionError("screw extraction requires a rigid-unit dual quaternion");
  }
  // Resolve the (q, -q) double cover: keep the primal scalar nonnegative.
  const DualQuaternion q = q_in.primal.w < 0.0 ? -q_in
                                               : q_in;

  const Point3 pv = q.primal.vec();
  const double sin_half = norm(pv);

  if (sin_half < kPureTranslationTol) {
    // Pure translation 1 + eps/2 d (or the identity).
    const Point3 d = 2.0 * q.dual.vec();
    const double dist = norm(d);
    if (dist <= kUnitTol) {
      return ScrewParams{};  // identity: canonical axis (0,0,1), zero moment
    }
    return {0.0, dist, (1.0 / dist) * d, Point3{}};
  }

  const double cos_half = q.primal.w;
  double theta = 2.0 * std::atan2(sin_half, cos_half);
  Point3 u = (1.0 / sin_half) * pv;
  double slide = -2.0 * q.dual.w / sin_half;
  Point3 moment = (1.0 / sin_half) * (q.dual.vec() - (0.5 * slide * cos_half) * u);

  // Canonical direction: first nonzero component positive. Flipping the
  // direction negates slide and moment and replaces theta by 2*pi - theta.
  const int lead = first_significant_component(u, kUnitTol);
  if (lead >= 0 && component(u, lead) < 0.0) {
    u = -u;
    moment = -moment;
    slide = -slide;
    theta = kTwoPi - theta;
  }
  return {theta, slide, u, moment};
}

DualQuaternion dq_from_rigid(const RigidTransform& t) {
  if (std::abs(norm(t.rotation) - 1.0) > kUnitTol) {
    throw NonUnitQuaternionError("rigid transform rotation must be unit");
  }
  return {t.rotation, 0.5 * (Quaternion::pure(t.translation) * t.rotation)};
}

RigidTransform rigid_from_dq(const DualQuaternion& q) {
  if (!is_rigid_unit(q)) {
    throw NonUnitDualQuaternionError("rigid view requires a rigid-unit dual quaternion");
  }
  return {q.primal, (2.0 * (q.dual * conj(q.primal))).vec()};
}

Point3 transform_point(const DualQuaternion& q, const Point3& p) {
  if (!is_rigid_unit(q)) {
    throw NonUnitDualQuaternionError("transform_point requires a rigid-unit dual quaternion");
  }
  const DualQuaternion embedded{Quaternion::identity(), Quaternion::pure(p)};
  const DualQuaternion moved = q * embedded * motion_conj(q);
  return moved.dual.vec();
}

}  // namespace dqnet

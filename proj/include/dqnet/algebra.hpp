#pragma once

// Value-semantics arithmetic for quaternions, dual numbers and dual
// quaternions, plus the conversions between unit dual quaternions and the
// screw / rotation+translation parameterizations of rigid motion.
//
// Conventions used throughout:
//   * quaternion components are ordered (w, x, y, z), w scalar;
//   * a dual quaternion is primal + eps * dual with eps^2 = 0;
//   * a rigid motion acts on points as p -> R*p + t (rotate about the
//     origin first, then translate);
//   * all reals are 64-bit doubles.

#include <cmath>

#include "dqnet/errors.hpp"

namespace dqnet {

// Unit-ness checks (axes, rotation quaternions, rigid dual quaternions).
inline constexpr double kUnitTol = 1e-9;
// Below this a norm is treated as zero and cannot be normalized away.
inline constexpr double kNormEps = 1e-15;
// sin(theta/2) threshold under which screw extraction switches to the
// pure-translation branch.
inline constexpr double kPureTranslationTol = 1e-7;

struct Point3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

inline Point3 operator+(const Point3& a, const Point3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
inline Point3 operator*(const Point3& p, double s) { return s * p; }
inline Point3 operator-(const Point3& p) { return {-p.x, -p.y, -p.z}; }

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }

struct Quaternion {
  double w{0.0};
  double x{0.0};
  double y{0.0};
  double z{0.0};

  static Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
  // Embeds a 3-vector as a pure quaternion (zero scalar part).
  static Quaternion pure(const Point3& v) { return {0.0, v.x, v.y, v.z}; }

  Point3 vec() const { return {x, y, z}; }
};

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
inline Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.w, s * q.x, s * q.y, s * q.z};
}
inline Quaternion operator*(const Quaternion& q, double s) { return s * q; }

// Hamilton product.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
inline double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }

// Throws ZeroNormError when |q| <= kNormEps.
Quaternion normalized(const Quaternion& q);

// Rotation quaternion cos(theta/2) + sin(theta/2) * u; `axis` must be unit
// within kUnitTol (NonUnitAxisError otherwise).
Quaternion quat_from_axis_angle(const Point3& axis, double theta);

// Sandwich product q p q*; `q` must be unit within kUnitTol.
Point3 rotate_point(const Quaternion& q, const Point3& p);

struct DualNumber {
  double primal{0.0};
  double dual{0.0};
};

inline DualNumber operator+(const DualNumber& a, const DualNumber& b) {
  return {a.primal + b.primal, a.dual + b.dual};
}
// Product truncates at first order in eps: the dual*dual term vanishes.
inline DualNumber operator*(const DualNumber& a, const DualNumber& b) {
  return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
}

struct DualQuaternion {
  Quaternion primal{};
  Quaternion dual{};

  static DualQuaternion identity() { return {Quaternion::identity(), Quaternion{}}; }
};

inline DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.primal + b.primal, a.dual + b.dual};
}
inline DualQuaternion operator-(const DualQuaternion& q) { return {-q.primal, -q.dual}; }
inline DualQuaternion operator*(double s, const DualQuaternion& q) {
  return {s * q.primal, s * q.dual};
}

inline DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
}

// Quaternion-conjugates both parts. For a rigid-unit dual quaternion this is
// the multiplicative inverse, i.e. the inverse motion.
inline DualQuaternion conj(const DualQuaternion& q) { return {conj(q.primal), conj(q.dual)}; }

// Combined conjugate used by the point sandwich: quaternion-conjugates both
// parts and negates the dual one. This is NOT the inverse motion; composing
// a motion with its sandwich conjugate shifts points by twice the rotated
// translation.
inline DualQuaternion motion_conj(const DualQuaternion& q) {
  return {conj(q.primal), -conj(q.dual)};
}

// Euclidean norm of the 8-component flattening, sqrt(|q0|^2 + |qe|^2).
inline double norm(const DualQuaternion& q) {
  return std::sqrt(dot(q.primal, q.primal) + dot(q.dual, q.dual));
}

// A rigid-motion dual quaternion has unit primal part and orthogonal
// primal/dual parts.
inline bool is_rigid_unit(const DualQuaternion& q, double tol = kUnitTol) {
  return std::abs(norm(q.primal) - 1.0) <= tol && std::abs(dot(q.primal, q.dual)) <= tol;
}

// Screw parameters of a rigid motion: rotate by `theta` about the line with
// unit direction `direction` and moment `moment`, then slide `slide` along it.
// The moment is direction x moment = closest axis point, so the pair fixes
// the line without naming a point on it.
struct ScrewParams {
  double theta{0.0};
  double slide{0.0};
  Point3 direction{0.0, 0.0, 1.0};
  Point3 moment{};
};

struct RigidTransform {
  Quaternion rotation{Quaternion::identity()};
  Point3 translation{};

  static RigidTransform identity() { return {}; }
};

// Unit dual quaternion of a screw motion, via the polar form
//   cos(theta_hat/2) + h_hat sin(theta_hat/2),
// theta_hat = theta + eps*slide, h_hat = direction + eps*moment.
// Throws InvalidScrewError for the ambiguous no-motion-with-axis-data case
// (theta = 0, slide = 0, moment != 0) and for grossly non-unit directions.
DualQuaternion dq_from_screw(const ScrewParams& s);

// Inverse of dq_from_screw for unit inputs. Angle lands in [0, 2*pi); the
// direction is canonicalized so its first nonzero component is positive
// (flipping moment/slide and replacing theta by 2*pi - theta as needed).
// Pure translations report theta = 0, direction along the displacement and
// slide = |displacement|; the identity motion reports the documented
// canonical axis (0,0,1) with zero moment.
ScrewParams screw_from_dq(const DualQuaternion& q);

// primal = rotation, dual = (translation * rotation) / 2.
DualQuaternion dq_from_rigid(const RigidTransform& t);

// Recovers the rotation+translation view of a unit dual quaternion.
RigidTransform rigid_from_dq(const DualQuaternion& q);

// Embeds p as 1 + eps*(p as pure quaternion), computes q p_hat motion_conj(q)
// and reads the dual vector part. `q` must be rigid-unit within kUnitTol.
Point3 transform_point(const DualQuaternion& q, const Point3& p);

}  // namespace dqnet

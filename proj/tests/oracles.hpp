#pragma once

// Test-only reference implementations. Everything here is computed by a
// different route than the library (structure-constant tables, explicit
// matrices, Rodrigues' formula) so the main code can be checked against an
// independent path.

#include <array>
#include <vector>

#include "dqnet/algebra.hpp"
#include "dqnet/nn.hpp"
#include "dqnet/rng.hpp"

namespace oracles {

using dqnet::Point3;
using dqnet::Quaternion;

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Hamilton structure constants: basis[i]*basis[j] = sum_k table[i][j][k] e_k,
// written out from i^2 = j^2 = k^2 = ijk = -1.
inline const std::array<std::array<std::array<double, 4>, 4>, 4>& hamilton_table() {
  static const auto table = [] {
    std::array<std::array<std::array<double, 4>, 4>, 4> t{};
    auto set = [&t](int i, int j, int k, double sign) { t[i][j][k] = sign; };
    // 1 is the identity
    for (int i = 0; i < 4; ++i) {
      set(0, i, i, 1.0);
      set(i, 0, i, 1.0);
    }
    set(1, 1, 0, -1.0);  // ii = -1
    set(2, 2, 0, -1.0);  // jj = -1
    set(3, 3, 0, -1.0);  // kk = -1
    set(1, 2, 3, 1.0);   // ij = k
    set(2, 1, 3, -1.0);  // ji = -k
    set(2, 3, 1, 1.0);   // jk = i
    set(3, 2, 1, -1.0);  // kj = -i
    set(3, 1, 2, 1.0);   // ki = j
    set(1, 3, 2, -1.0);  // ik = -j
    return t;
  }();
  return table;
}

// 4x4 matrix of left multiplication by q, built purely from the table.
inline Mat4 quat_left_matrix(const Quaternion& q) {
  const auto& table = hamilton_table();
  const std::array<double, 4> comps{q.w, q.x, q.y, q.z};
  Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        m[k][j] += comps[static_cast<std::size_t>(i)] * table[i][j][k];
      }
    }
  }
  return m;
}

inline std::array<double, 4> apply4(const Mat4& m, const std::array<double, 4>& v) {
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

// Rodrigues' rotation formula about unit axis u.
inline Point3 rodrigues(const Point3& u, double theta, const Point3& p) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * p + s * dqnet::cross(u, p) + (1.0 - c) * dqnet::dot(u, p) * u;
}

// Rotation matrix of a unit quaternion via the component formula.
inline Mat3 rotation_matrix(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

inline Point3 apply3(const Mat3& m, const Point3& p) {
  return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
          m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
}

// Homogeneous-transform view of rotation-then-translation.
struct Homogeneous {
  Mat3 rot;
  Point3 trans;

  Point3 apply(const Point3& p) const { return apply3(rot, p) + trans; }
};

inline Homogeneous from_rigid(const dqnet::RigidTransform& t) {
  return {rotation_matrix(t.rotation), t.translation};
}

// Screw motion as "rotate about the offset axis, then slide":
// p -> R(p - a) + a + slide * u with a = u x m the axis point.
inline Homogeneous from_screw(const dqnet::ScrewParams& s) {
  const Point3 a = dqnet::cross(s.direction, s.moment);
  const Quaternion q = dqnet::quat_from_axis_angle(s.direction, s.theta);
  const Mat3 r = rotation_matrix(q);
  const Point3 shift = a - apply3(r, a) + s.slide * s.direction;
  return {r, shift};
}

// Quaternion product straight from the table, on component arrays.
inline std::array<double, 4> table_mul(const std::array<double, 4>& a,
                                       const std::array<double, 4>& b) {
  const auto& table = hamilton_table();
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) out[k] += a[i] * b[j] * table[i][j][k];
    }
  }
  return out;
}

// Independent product on flattened components for each algebra.
inline std::vector<double> algebra_oracle_mul(dqnet::Algebra alg, const std::vector<double>& a,
                                              const std::vector<double>& b) {
  switch (alg) {
    case dqnet::Algebra::kReal: return {a[0] * b[0]};
    case dqnet::Algebra::kQuaternion: {
      const auto r = table_mul({a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]});
      return {r[0], r[1], r[2], r[3]};
    }
    case dqnet::Algebra::kDualQuaternion: {
      const std::array<double, 4> a0{a[0], a[1], a[2], a[3]}, ae{a[4], a[5], a[6], a[7]};
      const std::array<double, 4> b0{b[0], b[1], b[2], b[3]}, be{b[4], b[5], b[6], b[7]};
      const auto p = table_mul(a0, b0);
      const auto d1 = table_mul(a0, be);
      const auto d2 = table_mul(ae, b0);
      return {p[0], p[1], p[2], p[3], d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2], d1[3] + d2[3]};
    }
  }
  return {};
}

// --- random generators used across suites ---

inline Quaternion random_quat(dqnet::Rng& rng, double scale = 2.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale),
          rng.uniform(-scale, scale)};
}

inline Quaternion random_unit_quat(dqnet::Rng& rng) {
  return dqnet::quat_from_axis_angle(rng.unit_vector(),
                                     rng.uniform(0.0, 2.0 * 3.14159265358979323846));
}

inline Point3 random_point(dqnet::Rng& rng, double scale = 5.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline dqnet::RigidTransform random_rigid(dqnet::Rng& rng, double trans_scale = 5.0) {
  return {random_unit_quat(rng), random_point(rng, trans_scale)};
}

inline dqnet::DualQuaternion random_unit_dq(dqnet::Rng& rng, double trans_scale = 5.0) {
  return dqnet::dq_from_rigid(random_rigid(rng, trans_scale));
}

inline dqnet::ScrewParams random_screw(dqnet::Rng& rng) {
  dqnet::ScrewParams s;
  s.theta = rng.uniform(0.05, 2.0 * 3.14159265358979323846 - 0.05);
  s.slide = rng.uniform(-4.0, 4.0);
  s.direction = rng.unit_vector();
  // moment = p x direction for a random axis point keeps it perpendicular
  const Point3 p = random_point(rng, 3.0);
  s.moment = dqnet::cross(p, s.direction);
  return s;
}

}  // namespace oracles

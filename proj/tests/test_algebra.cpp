#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dqnet/algebra.hpp"
#include "dqnet/rng.hpp"
#include "oracles.hpp"

using namespace dqnet;

namespace {

constexpr double kPi = std::numbers::pi;

double quat_dist(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

bool point_close(const Point3& a, const Point3& b, double tol) { return norm(a - b) <= tol; }

ScrewParams canonicalized(ScrewParams s) {
  double lead = s.direction.x;
  if (std::abs(lead) <= 1e-9) lead = s.direction.y;
  if (std::abs(lead) <= 1e-9) lead = s.direction.z;
  if (lead < 0.0) {
    s.direction = -s.direction;
    s.moment = -s.moment;
    s.slide = -s.slide;
    s.theta = 2.0 * kPi - s.theta;
  }
  return s;
}

}  // namespace

TEST_CASE("hamilton rules hold exactly") {
  const Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(quat_dist(i * i, -one) == 0.0);
  CHECK(quat_dist(j * j, -one) == 0.0);
  CHECK(quat_dist(k * k, -one) == 0.0);
  CHECK(quat_dist(i * j, k) == 0.0);
  CHECK(quat_dist(j * k, i) == 0.0);
  CHECK(quat_dist(k * i, j) == 0.0);
  CHECK(quat_dist(j * i, -k) == 0.0);
  CHECK(quat_dist(k * j, -i) == 0.0);
  CHECK(quat_dist(i * k, -j) == 0.0);
  CHECK(quat_dist((i * j) * k, -one) == 0.0);
}

TEST_CASE("quaternion product matches the structure-constant matrix oracle") {
  Rng rng(11);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a = oracles::random_quat(rng);
    const Quaternion b = oracles::random_quat(rng);
    const Quaternion got = a * b;
    const auto want = oracles::apply4(oracles::quat_left_matrix(a), {b.w, b.x, b.y, b.z});
    worst = std::max(worst, quat_dist(got, {want[0], want[1], want[2], want[3]}));
    // identity element
    CHECK(quat_dist(a * Quaternion::identity(), a) == 0.0);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("quaternion norm is multiplicative") {
  Rng rng(12);
  for (int n = 0; n < 200; ++n) {
    const Quaternion a = oracles::random_quat(rng);
    const Quaternion b = oracles::random_quat(rng);
    CHECK(norm(a * b) == doctest::Approx(norm(a) * norm(b)).epsilon(1e-12));
  }
}

TEST_CASE("conjugate flips the vector part and q q* is the squared norm") {
  const Quaternion q{1, 2, 3, 4};
  const Quaternion qc = conj(q);
  CHECK(qc.w == 1.0);
  CHECK(qc.x == -2.0);
  CHECK(qc.y == -3.0);
  CHECK(qc.z == -4.0);
  CHECK(quat_dist(conj(qc), q) == 0.0);

  Rng rng(13);
  for (int n = 0; n < 200; ++n) {
    const Quaternion a = oracles::random_quat(rng);
    const Quaternion prod = a * conj(a);
    const double n2 = a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z;
    CHECK(std::abs(prod.w - n2) < 1e-12 * std::max(1.0, n2));
    CHECK(std::abs(prod.x) < 1e-12);
    CHECK(std::abs(prod.y) < 1e-12);
    CHECK(std::abs(prod.z) < 1e-12);
  }
}

TEST_CASE("normalization") {
  const Quaternion q = normalized({2, 0, 0, 0});
  CHECK(quat_dist(q, Quaternion::identity()) == 0.0);

  Rng rng(14);
  for (int n = 0; n < 50; ++n) {
    const Quaternion u = oracles::random_unit_quat(rng);
    CHECK(quat_dist(normalized(u), u) <= 1e-15);
    CHECK(std::abs(norm(normalized(oracles::random_quat(rng))) - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(normalized({0, 0, 0, 0}), ZeroNormError);
}

TEST_CASE("axis-angle construction") {
  const Quaternion half_turn = quat_from_axis_angle({0, 0, 1}, kPi);
  CHECK(std::abs(half_turn.w) <= 1e-15);
  CHECK(half_turn.x == 0.0);
  CHECK(half_turn.y == 0.0);
  CHECK(half_turn.z == doctest::Approx(1.0).epsilon(1e-15));

  Rng rng(15);
  CHECK(quat_dist(quat_from_axis_angle(rng.unit_vector(), 0.0), Quaternion::identity()) == 0.0);

  CHECK_THROWS_AS(quat_from_axis_angle({0, 0, 2}, 1.0), NonUnitAxisError);

  for (int n = 0; n < 500; ++n) {
    const Point3 axis = rng.unit_vector();
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const Point3 p = oracles::random_point(rng);
    const Point3 got = rotate_point(quat_from_axis_angle(axis, theta), p);
    CHECK(point_close(got, oracles::rodrigues(axis, theta, p), 1e-12));
  }
}

TEST_CASE("rotate_point matches the rotation-matrix oracle") {
  const Quaternion halfz = quat_from_axis_angle({0, 0, 1}, kPi);
  CHECK(point_close(rotate_point(halfz, {1, 0, 0}), {-1, 0, 0}, 1e-15));
  CHECK(point_close(rotate_point(Quaternion::identity(), {3, -2, 5}), {3, -2, 5}, 0.0));

  Rng rng(16);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion q = oracles::random_unit_quat(rng);
    const Point3 p = oracles::random_point(rng);
    const Point3 got = rotate_point(q, p);
    CHECK(point_close(got, oracles::apply3(oracles::rotation_matrix(q), p), 1e-12));
    // the sandwich is a pure quaternion and preserves length
    const Quaternion sandwich = q * Quaternion::pure(p) * conj(q);
    CHECK(std::abs(sandwich.w) < 1e-12);
    CHECK(std::abs(norm(got) - norm(p)) <= 1e-9 * std::max(1.0, norm(p)));
  }

  CHECK_THROWS_AS(rotate_point({2, 0, 0, 0}, {1, 0, 0}), NonUnitQuaternionError);
}

TEST_CASE("dual numbers truncate at first order") {
  const DualNumber a{1, 2}, b{3, 4};
  const DualNumber ab = a * b;
  CHECK(ab.primal == 3.0);
  CHECK(ab.dual == 10.0);

  const DualNumber pure1{0, 5}, pure2{0, 7};
  const DualNumber zero = pure1 * pure2;
  CHECK(zero.primal == 0.0);
  CHECK(zero.dual == 0.0);

  // matrix representation oracle: (a0 + eps ae) acts as [[a0, 0], [ae, a0]]
  Rng rng(17);
  for (int n = 0; n < 200; ++n) {
    const DualNumber x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const DualNumber y{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const DualNumber got = x * y;
    CHECK(std::abs(got.primal - x.primal * y.primal) <= 1e-15);
    CHECK(std::abs(got.dual - (x.dual * y.primal + x.primal * y.dual)) <= 1e-15);
  }
}

TEST_CASE("dual quaternion product") {
  Rng rng(18);
  const DualQuaternion q = oracles::random_unit_dq(rng);
  const DualQuaternion qi = q * DualQuaternion::identity();
  CHECK(quat_dist(qi.primal, q.primal) == 0.0);
  CHECK(quat_dist(qi.dual, q.dual) == 0.0);

  // translations compose additively
  const Point3 d1{1, 2, 3}, d2{-4, 0.5, 2};
  const DualQuaternion t1 = dq_from_rigid({Quaternion::identity(), d1});
  const DualQuaternion t2 = dq_from_rigid({Quaternion::identity(), d2});
  const DualQuaternion both = t1 * t2;
  CHECK(quat_dist(both.primal, Quaternion::identity()) == 0.0);
  CHECK(quat_dist(both.dual, 0.5 * Quaternion::pure(d1 + d2)) <= 1e-15);

  for (int n = 0; n < 1000; ++n) {
    const DualQuaternion g = oracles::random_unit_dq(rng);
    const DualQuaternion f = oracles::random_unit_dq(rng);
    CHECK(is_rigid_unit(g * f, 1e-12));
    const Point3 p = oracles::random_point(rng);
    CHECK(point_close(transform_point(g * f, p), transform_point(g, transform_point(f, p)),
                      1e-10));
  }

  // associativity
  for (int n = 0; n < 100; ++n) {
    const DualQuaternion a = oracles::random_unit_dq(rng);
    const DualQuaternion b = oracles::random_unit_dq(rng);
    const DualQuaternion c = oracles::random_unit_dq(rng);
    const DualQuaternion left = (a * b) * c;
    const DualQuaternion right = a * (b * c);
    CHECK(quat_dist(left.primal, right.primal) < 1e-12);
    CHECK(quat_dist(left.dual, right.dual) < 1e-11);
  }
}

TEST_CASE("quaternion conjugate of a unit motion is its inverse") {
  const DualQuaternion id = DualQuaternion::identity();
  const DualQuaternion idc = conj(id);
  CHECK(quat_dist(idc.primal, id.primal) == 0.0);
  CHECK(quat_dist(idc.dual, id.dual) == 0.0);

  // a pure translation's inverse motion uses -d
  const Point3 d{2, -1, 4};
  const DualQuaternion t = dq_from_rigid({Quaternion::identity(), d});
  const DualQuaternion tc = conj(t);
  CHECK(quat_dist(tc.dual, -0.5 * Quaternion::pure(d)) <= 1e-15);

  Rng rng(19);
  for (int n = 0; n < 20; ++n) {
    const DualQuaternion q = oracles::random_unit_dq(rng);
    const DualQuaternion prod = q * conj(q);
    CHECK(quat_dist(prod.primal, Quaternion::identity()) < 1e-12);
    CHECK(norm(prod.dual) < 1e-12);
    for (int m = 0; m < 100; ++m) {
      const Point3 p = oracles::random_point(rng);
      CHECK(point_close(transform_point(conj(q), transform_point(q, p)), p, 1e-10));
    }
  }
}

TEST_CASE("the sandwich conjugate keeps the identity fixed but is not the inverse") {
  const DualQuaternion id = DualQuaternion::identity();
  const DualQuaternion idc = motion_conj(id);
  CHECK(quat_dist(idc.primal, id.primal) == 0.0);
  CHECK(quat_dist(idc.dual, id.dual) == 0.0);

  // (q0*, -qe*) flips the sign of the dual scalar and keeps a pure
  // translation's dual vector part; the inverse-motion role belongs to conj.
  const Point3 d{2, -1, 4};
  const DualQuaternion t = dq_from_rigid({Quaternion::identity(), d});
  const DualQuaternion tc = motion_conj(t);
  CHECK(quat_dist(tc.dual, 0.5 * Quaternion::pure(d)) <= 1e-15);
}

TEST_CASE("dual quaternion norm is the 8-component euclidean norm") {
  CHECK(norm(DualQuaternion{Quaternion::identity(), Quaternion::identity()}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(norm(DualQuaternion::identity()) == 1.0);

  Rng rng(20);
  for (int n = 0; n < 200; ++n) {
    const DualQuaternion q{oracles::random_quat(rng), oracles::random_quat(rng)};
    const double flat[8] = {q.primal.w, q.primal.x, q.primal.y, q.primal.z,
                            q.dual.w,   q.dual.x,   q.dual.y,   q.dual.z};
    double ss = 0.0;
    for (double v : flat) ss += v * v;
    CHECK(std::abs(norm(q) - std::sqrt(ss)) <= 1e-15 * std::max(1.0, std::sqrt(ss)));
  }
}

TEST_CASE("screw to dual quaternion") {
  // pure translation along an axis through the origin
  const Point3 d{3, 0, 4};
  ScrewParams s;
  s.theta = 0.0;
  s.slide = norm(d);
  s.direction = (1.0 / norm(d)) * d;
  s.moment = {};
  const DualQuaternion t = dq_from_screw(s);
  CHECK(quat_dist(t.primal, Quaternion::identity()) == 0.0);
  CHECK(quat_dist(t.dual, 0.5 * Quaternion::pure(d)) <= 1e-15);

  // axis through the origin and no slide: dual part is null
  ScrewParams rot;
  rot.theta = 1.3;
  rot.slide = 0.0;
  rot.direction = {0, 1, 0};
  rot.moment = {};
  const DualQuaternion r = dq_from_screw(rot);
  CHECK(std::abs(r.dual.w) < 1e-15);
  CHECK(std::abs(r.dual.x) < 1e-15);
  CHECK(std::abs(r.dual.y) < 1e-15);
  CHECK(std::abs(r.dual.z) < 1e-15);
  CHECK(quat_dist(r.primal, quat_from_axis_angle(rot.direction, rot.theta)) <= 1e-15);

  // the ambiguous no-motion case
  ScrewParams bad;
  bad.theta = 0.0;
  bad.slide = 0.0;
  bad.moment = {1, 0, 0};
  CHECK_THROWS_AS(dq_from_screw(bad), InvalidScrewError);

  // random screws act like rotate-about-offset-axis-then-slide
  Rng rng(21);
  for (int n = 0; n < 1000; ++n) {
    const ScrewParams sp = oracles::random_screw(rng);
    const DualQuaternion q = dq_from_screw(sp);
    CHECK(is_rigid_unit(q, 1e-12));
    const auto homo = oracles::from_screw(sp);
    const Point3 p = oracles::random_point(rng);
    CHECK(point_close(transform_point(q, p), homo.apply(p), 1e-9));
  }
}

TEST_CASE("screw extraction") {
  const ScrewParams id = screw_from_dq(DualQuaternion::identity());
  CHECK(id.theta == 0.0);
  CHECK(id.slide == 0.0);
  CHECK(point_close(id.direction, {0, 0, 1}, 0.0));
  CHECK(point_close(id.moment, {}, 0.0));

  const DualQuaternion shift{Quaternion::identity(), {0, 1.5, 0, 0}};
  const ScrewParams sp = screw_from_dq(shift);
  CHECK(sp.theta == 0.0);
  CHECK(sp.slide == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(point_close(sp.direction, {1, 0, 0}, 1e-15));

  CHECK_THROWS_AS(screw_from_dq(DualQuaternion{{2, 0, 0, 0}, {}}), NonUnitDualQuaternionError);

  // round trip within 1e-9 up to the direction-flip equivalence
  Rng rng(22);
  for (int n = 0; n < 1000; ++n) {
    const ScrewParams in = canonicalized(oracles::random_screw(rng));
    const ScrewParams out = screw_from_dq(dq_from_screw(in));
    CHECK(std::abs(out.theta - in.theta) < 1e-9);
    CHECK(std::abs(out.slide - in.slide) < 1e-9);
    CHECK(point_close(out.direction, in.direction, 1e-9));
    CHECK(point_close(out.moment, in.moment, 1e-9));
  }
}

TEST_CASE("moment is invariant to the choice of axis point") {
  Rng rng(23);
  for (int n = 0; n < 200; ++n) {
    const Point3 u = rng.unit_vector();
    const Point3 p = oracles::random_point(rng);
    const double alpha = rng.uniform(-10, 10);
    CHECK(point_close(cross(p + alpha * u, u), cross(p, u), 1e-12));
  }
}

TEST_CASE("rigid transform round trip and the matrix oracle") {
  const Point3 d{0.5, -2, 1};
  const DualQuaternion t = dq_from_rigid({Quaternion::identity(), d});
  CHECK(quat_dist(t.primal, Quaternion::identity()) == 0.0);
  CHECK(quat_dist(t.dual, 0.5 * Quaternion::pure(d)) <= 1e-15);

  Rng rng(24);
  const DualQuaternion ronly = dq_from_rigid({oracles::random_unit_quat(rng), {}});
  CHECK(norm(ronly.dual) == 0.0);

  CHECK_THROWS_AS(dq_from_rigid({{2, 0, 0, 0}, {1, 1, 1}}), NonUnitQuaternionError);

  for (int n = 0; n < 1000; ++n) {
    const RigidTransform g = oracles::random_rigid(rng);
    const DualQuaternion q = dq_from_rigid(g);
    CHECK(is_rigid_unit(q, 1e-12));
    const auto homo = oracles::from_rigid(g);
    const Point3 p = oracles::random_point(rng);
    CHECK(point_close(transform_point(q, p), homo.apply(p), 1e-10));

    const RigidTransform back = rigid_from_dq(q);
    CHECK(quat_dist(back.rotation, g.rotation) < 1e-12);
    CHECK(point_close(back.translation, g.translation, 1e-12));
  }
}

TEST_CASE("transform_point basics") {
  const Point3 p{3, 1, -2};
  CHECK(point_close(transform_point(DualQuaternion::identity(), p), p, 0.0));

  const DualQuaternion unit_x{Quaternion::identity(), {0, 0.5, 0, 0}};
  CHECK(point_close(transform_point(unit_x, {}), {1, 0, 0}, 1e-15));

  CHECK_THROWS_AS(transform_point(DualQuaternion{{0.5, 0, 0, 0}, {}}, p),
                  NonUnitDualQuaternionError);

  // distances are preserved
  Rng rng(25);
  for (int n = 0; n < 200; ++n) {
    const DualQuaternion q = oracles::random_unit_dq(rng);
    const Point3 a = oracles::random_point(rng);
    const Point3 b = oracles::random_point(rng);
    CHECK(std::abs(norm(transform_point(q, a) - transform_point(q, b)) - norm(a - b)) <= 1e-9);
  }
}

TEST_CASE("pure-rotation screws reduce to plain rotations") {
  Rng rng(26);
  for (int n = 0; n < 200; ++n) {
    ScrewParams s;
    s.theta = rng.uniform(0.05, 2.0 * kPi - 0.05);
    s.slide = 0.0;
    s.direction = rng.unit_vector();
    s.moment = {};
    const DualQuaternion q = dq_from_screw(s);
    CHECK(std::abs(q.dual.w) < 1e-15);
    CHECK(std::abs(q.dual.x) < 1e-15);
    CHECK(std::abs(q.dual.y) < 1e-15);
    CHECK(std::abs(q.dual.z) < 1e-15);
    const Point3 p = oracles::random_point(rng);
    CHECK(point_close(transform_point(q, p),
                      rotate_point(quat_from_axis_angle(s.direction, s.theta), p), 1e-12));
  }
}

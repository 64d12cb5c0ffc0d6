#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lg/gc4.hpp"
#include "test_util.hpp"

using namespace lg;
using lgtest::Rng;

namespace {
const Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
}

TEST_CASE("plucker_line basis cases") {
  HomPoint p0(1, Vec3::Zero()), p1(0, e1), p2(0, e2), p3(0, e3);
  Line33 l = plucker_line(p0, p1);  // e0 ^ e1 = E1
  CHECK((l.x - e1).norm() == doctest::Approx(0.0));
  CHECK(l.y.norm() == doctest::Approx(0.0));

  l = plucker_line(p2, p3);  // e23 = E1'
  CHECK(l.x.norm() == doctest::Approx(0.0));
  CHECK((l.y - e1).norm() == doctest::Approx(0.0));

  // (e0+e3, e1) -> E1 + E2' since e3^e1 = E2'
  l = plucker_line(HomPoint(1, e3), p1);
  CHECK((l.x - e1).norm() == doctest::Approx(0.0));
  CHECK((l.y - e2).norm() == doctest::Approx(0.0));
}

TEST_CASE("plucker_line output is null and degenerate input throws") {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    HomPoint a(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    HomPoint b(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    Line33 l = plucker_line(a, b);
    CHECK(std::abs(l.x.dot(l.y)) <= 1e-12);
  }
  HomPoint a(1, e1 + e2);
  CHECK_THROWS_AS(plucker_line(a, HomPoint(2, 2 * (e1 + e2))), Error);
}

TEST_CASE("meet_planes table and bilinearity") {
  CoPlane c0(1, Vec3::Zero()), c1(0, e1), c2(0, e2);
  Line33 l = meet_planes(c0, c1);  // ce0 v ce1 = E1'
  CHECK(l.x.norm() == doctest::Approx(0.0));
  CHECK((l.y - e1).norm() == doctest::Approx(0.0));

  l = meet_planes(c1, c2);  // ce1 v ce2 = E3
  CHECK((l.x - e3).norm() == doctest::Approx(0.0));
  CHECK(l.y.norm() == doctest::Approx(0.0));

  // (ce0+ce1) v ce2 = E3 + E2'
  l = meet_planes(CoPlane(1, e1), c2);
  CHECK((l.x - e3).norm() == doctest::Approx(0.0));
  CHECK((l.y - e2).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(meet_planes(c1, CoPlane(0, 3 * e1)), Error);
}

TEST_CASE("bracket evaluates the dual pairing") {
  CHECK(bracket(HomPoint(1, Vec3::Zero()), CoPlane(1, Vec3::Zero())) ==
        doctest::Approx(1.0));
  CHECK(bracket(HomPoint(0, e1), CoPlane(1, Vec3::Zero())) ==
        doctest::Approx(0.0));
  CHECK(bracket(HomPoint(1, 2 * e1), CoPlane(1, 3 * e1)) ==
        doctest::Approx(7.0));
}

TEST_CASE("meet of two planes lies on both planes") {
  Rng rng(22);
  for (int k = 0; k < 100; ++k) {
    CoPlane p1(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    CoPlane p2(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    Line33 l = meet_planes(p1, p2);
    CHECK(std::abs(l.x.dot(l.y)) <= 1e-12);
    // pick two points incident to both planes: any point X on the line
    // satisfies bracket(X, p_i) = 0.  The line (x, y) passes through the
    // ideal point (0, x) and, when x != 0, the affine point (|x|^2, x x y).
    HomPoint ideal(0, l.x);
    CHECK(std::abs(bracket(ideal, p1)) <= 1e-9);
    CHECK(std::abs(bracket(ideal, p2)) <= 1e-9);
    if (l.x.norm() > 0.1) {
      HomPoint aff(l.x.squaredNorm(), l.x.cross(l.y));
      CHECK(std::abs(bracket(aff, p1)) <= 1e-9);
      CHECK(std::abs(bracket(aff, p2)) <= 1e-9);
    }
  }
}

TEST_CASE("lines through a common point meet in R^{3,3} inner product") {
  // plucker_line(X, A).dot(plucker_line(X, B)) = 0: concurrent lines are
  // mutually orthogonal null vectors.
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    HomPoint x(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    HomPoint a(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    HomPoint b(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
    Line33 l1 = plucker_line(x, a);
    Line33 l2 = plucker_line(x, b);
    CHECK(std::abs(l1.dot(l2)) <= 1e-9);
  }
}

TEST_CASE("wedge3 identities") {
  Mat4 id = Mat4::Identity();
  CHECK((wedge3(id) - id).norm() == doctest::Approx(0.0));

  Mat4 d = Mat4::Identity();
  d(0, 0) = 2.0;
  Mat4 want = 2.0 * Mat4::Identity();
  want(0, 0) = 1.0;
  CHECK((wedge3(d) - want).norm() == doctest::Approx(0.0));

  Rng rng(24);
  for (int k = 0; k < 50; ++k) {
    Mat4 a = lgtest::rand_sl4(rng);
    Mat4 prod = wedge3(a).transpose() * a;
    CHECK((prod - a.determinant() * Mat4::Identity()).norm() <= 1e-9);
  }
  CHECK_THROWS_AS(wedge3(Mat4::Zero()), Error);
}

TEST_CASE("bracket4 is the 4x4 determinant of the point coordinates") {
  CHECK(bracket4(HomPoint(1, Vec3::Zero()), HomPoint(0, e1), HomPoint(0, e2),
                 HomPoint(0, e3)) == doctest::Approx(1.0));
  Rng rng(25);
  HomPoint a(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
  HomPoint b(lgtest::rand_real(rng), lgtest::rand_vec3(rng));
  CHECK(bracket4(a, b, a, b) == doctest::Approx(0.0));
}

#pragma once
// Grassmann-Cayley algebra over R^4 and its dual: wedge, meet, brackets, and
// the Pluecker line map identifying Lambda^2(R^4) with R^{3,3} through the
// induced Witt basis
//   E1=e01, E2=e02, E3=e03,  E1'=e23, E2'=e31, E3'=e12.
//
// e0..e3 is an abstract ordered basis; no Euclidean metric on R^4 is used.

#include "lg/core.hpp"
#include "lg/multivector.hpp"

namespace lg {

// Homogeneous point X = x0*e0 + x; affine iff x0 != 0.
struct HomPoint {
  double x0 = 0.0;
  Vec3 x = Vec3::Zero();

  HomPoint() = default;
  HomPoint(double x0_, const Vec3& x_) : x0(x0_), x(x_) {}

  Vec4 v4() const {
    Vec4 v;
    v << x0, x;
    return v;
  }
  static HomPoint from_v4(const Vec4& v) { return HomPoint(v[0], v.tail<3>()); }
};

// Plane covector Pi = d*ce0 + n1*ce1 + n2*ce2 + n3*ce3 in Lambda^3(R^4);
// incidence with a point: x0*d + x.n = 0.
struct CoPlane {
  double d = 0.0;
  Vec3 n = Vec3::Zero();

  CoPlane() = default;
  CoPlane(double d_, const Vec3& n_) : d(d_), n(n_) {}

  Vec4 v4() const {
    Vec4 v;
    v << d, n;
    return v;
  }
  static CoPlane from_v4(const Vec4& v) { return CoPlane(v[0], v.tail<3>()); }
};

// A projective line is a null Vector33 (x.y = 0).
using Line33 = Vector33;

// X1 ^ X2 as Pluecker coordinates: screw ((x0_1 x_2 - x0_2 x_1), x_1 x x_2).
// Throws Error("DegenerateInput") when the points are proportional.
Line33 plucker_line(const HomPoint& X1, const HomPoint& X2);

// Pi1 v Pi2 through the meet table ce0 v ce_i = E_i', ce_i v ce_j = E_k:
// screw (n1 x n2, d1 n2 - d2 n1).  Error("DegenerateInput") if proportional.
Line33 meet_planes(const CoPlane& P1, const CoPlane& P2);

// Dual pairing X v Pi = x0 d + x.n.
double bracket(const HomPoint& X, const CoPlane& P);

// Bracket of four points [X1 X2 X3 X4] = det of their coordinates.
double bracket4(const HomPoint& X1, const HomPoint& X2, const HomPoint& X3,
                const HomPoint& X4);

// Induced action on Lambda^3(R^4) in the ce basis: det(A) * A^{-T}.
// Error("Singular") when det(A) ~ 0.
Mat4 wedge3(const Mat4& A);

}  // namespace lg

#include "lg/gc4.hpp"

#include <cmath>

namespace lg {

Line33 plucker_line(const HomPoint& X1, const HomPoint& X2) {
  // X1 ^ X2 = x0_1 e0^x2 - x0_2 e0^x1 + x1^x2 with e0^e_i = E_i and
  // e_i^e_j = E_k' for positive permutations ijk.
  Vec3 xpart = X1.x0 * X2.x - X2.x0 * X1.x;
  Vec3 ypart = X1.x.cross(X2.x);
  if (xpart.norm() + ypart.norm() <=
      kAbsTol * std::max(1.0, X1.v4().norm() * X2.v4().norm()))
    fail("DegenerateInput", "plucker_line: points are proportional");
  return Line33(xpart, ypart);
}

Line33 meet_planes(const CoPlane& P1, const CoPlane& P2) {
  // Bilinear expansion of the meet table (ce0 v ce_i = E_i',
  // ce_i v ce_j = E_k, antisymmetric).
  Vec3 xpart = P1.n.cross(P2.n);
  Vec3 ypart = P1.d * P2.n - P2.d * P1.n;
  if (xpart.norm() + ypart.norm() <=
      kAbsTol * std::max(1.0, P1.v4().norm() * P2.v4().norm()))
    fail("DegenerateInput", "meet_planes: planes are proportional");
  return Line33(xpart, ypart);
}

double bracket(const HomPoint& X, const CoPlane& P) {
  return X.x0 * P.d + X.x.dot(P.n);
}

double bracket4(const HomPoint& X1, const HomPoint& X2, const HomPoint& X3,
                const HomPoint& X4) {
  Mat4 m;
  m.col(0) = X1.v4();
  m.col(1) = X2.v4();
  m.col(2) = X3.v4();
  m.col(3) = X4.v4();
  return m.determinant();
}

Mat4 wedge3(const Mat4& A) {
  double det = A.determinant();
  if (std::abs(det) <= kAbsTol * std::pow(A.norm(), 4))
    fail("Singular", "wedge3: matrix is singular");
  return det * A.inverse().transpose();
}

}  // namespace lg

#include "lg/screw.hpp"

#include <algorithm>
#include <cmath>

#include "lg/gc4.hpp"

namespace lg {

namespace {

Mat3 cross_mat(const Vec3& x) {
  Mat3 m;
  m << 0, -x[2], x[1], x[2], 0, -x[0], -x[1], x[0], 0;
  return m;
}

// Cyclic skew halves used by the block decomposition N = diag(n1) +
// skew(n2) + skew^T(n3): skew(x) carries x1,x2,x3 at (1,2),(2,0),(0,1).
Mat3 cyc_skew(const Vec3& x) {
  Mat3 m = Mat3::Zero();
  m(1, 2) = x[0];
  m(2, 0) = x[1];
  m(0, 1) = x[2];
  return m;
}

double cdot(const Multivector& a, const Multivector& b) {
  double s = 0.0;
  for (int i = 0; i < 64; ++i) s += a.c[i] * b.c[i];
  return s;
}

// Coordinates of B in the image of a linear map R^3 -> Lambda^2 whose
// images of e1,e2,e3 are independent (Gram solve on raw coefficients).
template <typename Map>
Vec3 extract3(const Multivector& B, Map map) {
  Multivector basis[3] = {map(Vec3::UnitX()), map(Vec3::UnitY()),
                          map(Vec3::UnitZ())};
  Mat3 G;
  Vec3 rhs;
  for (int i = 0; i < 3; ++i) {
    rhs[i] = cdot(basis[i], B);
    for (int j = 0; j < 3; ++j) G(i, j) = cdot(basis[i], basis[j]);
  }
  return G.partialPivLu().solve(rhs);
}

void require_tag(const Screw& a, const Screw& b, const char* who) {
  if (a.algebra != b.algebra)
    fail("AlgebraMismatch", std::string(who) + ": operands carry different "
                                               "algebra tags");
}

Vec3 times1(const Vec3& x, const Vec3& y) {
  return Vec3(x[1] * y[2] - x[2] * y[1], -(x[2] * y[0] - x[0] * y[2]),
              -(x[0] * y[1] - x[1] * y[0]));
}

Vec3 times2(const Vec3& x, const Vec3& y) {
  return Vec3(-(x[1] * y[2] - x[2] * y[1]), -(x[2] * y[0] + x[0] * y[2]),
              x[0] * y[1] + x[1] * y[0]);
}

Vec3 star(const Vec3& x, const Vec3& y) {
  return Vec3(x[1] * y[2] + x[2] * y[1], x[2] * y[0] + x[0] * y[2],
              x[0] * y[1] + x[1] * y[0]);
}

Vec3 odot(const Vec3& x, const Vec3& y) { return x.cwiseProduct(y); }

const Vec3 kOnes = Vec3::Ones();

// Q/P lifts per subalgebra tag: the bivector commutator of two lifts is
// the lift of the closed-form cross product.
Multivector qp_Q(Algebra tag, const Vec3& x) {
  switch (tag) {
    case Algebra::se3:
    case Algebra::so4:
    case Algebra::so31:
    case Algebra::so301:
      return bv_EgEp(x) - bv_ElEp(x);
    case Algebra::so22:
      return blade_of({2, 4}, -x[0]) + blade_of({1, 5}, x[0]) +
             blade_of({0, 5}, -x[1]) + blade_of({2, 3}, -x[1]) +
             blade_of({1, 3}, x[2]) + blade_of({0, 4}, x[2]);
    case Algebra::so211:
      return blade_of({2, 4}, x[0]) + blade_of({1, 5}, -x[0]) +
             blade_of({0, 5}, x[1]) + blade_of({2, 3}, x[1]) +
             blade_of({1, 3}, x[2]) + blade_of({0, 4}, x[2]);
    case Algebra::gad:
      return bv_EpEp(x);
  }
  fail("UnknownAlgebra", "qp_Q: bad tag");
}

Multivector qp_P(Algebra tag, const Vec3& y) {
  switch (tag) {
    case Algebra::se3:
      return -bv_EpEp(y);
    case Algebra::so4:
      return bv_EE(y) + bv_EpEp(y);
    case Algebra::so31:
      return bv_EpEp(y) - bv_EE(y);
    case Algebra::so301:
      return bv_EE(y);
    case Algebra::so22:
      return blade_of({4, 5}, y[0]) + blade_of({1, 2}, y[0]) +
             blade_of({5, 3}, y[1]) + blade_of({2, 0}, -y[1]) +
             blade_of({3, 4}, y[2]) + blade_of({0, 1}, -y[2]);
    case Algebra::so211:
      return blade_of({1, 2}, y[0]) + blade_of({2, 0}, -y[1]) +
             blade_of({0, 1}, y[2]);
    case Algebra::gad:
      return bv_EeqEp3(y);
  }
  fail("UnknownAlgebra", "qp_P: bad tag");
}

}  // namespace

// Basis maps --------------------------------------------------------------

Multivector bv_EE(const Vec3& x) {
  return blade_of({1, 2}, x[0]) + blade_of({2, 0}, x[1]) +
         blade_of({0, 1}, x[2]);
}

Multivector bv_EpEp(const Vec3& x) {
  return blade_of({4, 5}, x[0]) + blade_of({5, 3}, x[1]) +
         blade_of({3, 4}, x[2]);
}

Multivector bv_ElEp(const Vec3& x) {
  return blade_of({1, 5}, x[0]) + blade_of({2, 3}, x[1]) +
         blade_of({0, 4}, x[2]);
}

Multivector bv_EgEp(const Vec3& x) {
  return blade_of({2, 4}, x[0]) + blade_of({0, 5}, x[1]) +
         blade_of({1, 3}, x[2]);
}

Multivector bv_EeqEp(const Vec3& x) {
  Multivector e11 = blade_of({0, 3});
  Multivector e22 = blade_of({1, 4});
  Multivector e33 = blade_of({2, 5});
  return (e22 + e33) * x[0] + (e33 + e11) * x[1] + (e11 + e22) * x[2];
}

Multivector bv_EeqEp3(const Vec3& x) {
  Multivector diag = blade_of({0, 3}, x[0]) + blade_of({1, 4}, x[1]) +
                     blade_of({2, 5}, x[2]);
  return (bv_EeqEp(x) - diag) * 0.5;
}

Multivector bivector_comm(const Multivector& A, const Multivector& B) {
  return (A * B - B * A) * 0.5;
}

// se(3) -------------------------------------------------------------------

Screw se3_cross(const Screw& s1, const Screw& s2) {
  require_tag(s1, s2, "se3_cross");
  if (s1.algebra != Algebra::se3)
    fail("AlgebraMismatch", "se3_cross: operands must be tagged se3");
  Screw r;
  r.algebra = Algebra::se3;
  r.v = s1.v.cross(s2.v);
  r.t = s1.v.cross(s2.t) + s1.t.cross(s2.v);
  return r;
}

Vector33 trivector_cross(const Trivector33& T, const Vector33& X,
                         const Vector33& Y) {
  Multivector w = outer_product(X.mv(), Y.mv());
  return Vector33::from_mv(-inner_product(w, T.t));
}

Multivector c3_lift(const Vector33& X) {
  return inner_product(X.mv(), C3());
}

Multivector d3_lift(const Vector33& X) {
  return inner_product(X.mv(), D3());
}

double virtual_work(const Screw& motion, const Wrench& wrench, double lambda,
                    bool classical) {
  if (classical) return wrench.f.dot(motion.t) + wrench.q.dot(motion.v);
  Multivector a =
      inner_product(motion.vec().mv(), C3() + lambda * I3());
  Multivector b = inner_product(Vector33(wrench.f, wrench.q).mv(),
                                D3() + lambda * J3());
  return scalar_product(a, b);
}

CommonPerp common_perpendicular(const Screw& L1, const Screw& L2) {
  require_tag(L1, L2, "common_perpendicular");
  const double m1 = L1.v.norm(), m2 = L2.v.norm();
  if (m1 < kAbsTol || m2 < kAbsTol)
    fail("ParallelAxes", "common_perpendicular: zero direction");
  Vec3 l1 = L1.v / m1, l2 = L2.v / m2;
  Vec3 c1 = l1.cross(L1.t / m1), c2 = l2.cross(L2.t / m2);
  double lam1 = L1.t.dot(L1.v) / (m1 * m1);
  double lam2 = L2.t.dot(L2.v) / (m2 * m2);
  Vec3 n = l1.cross(l2);
  double n2 = n.squaredNorm();
  if (n2 < 1e-18)
    fail("ParallelAxes", "common_perpendicular: parallel directions");
  CommonPerp r;
  r.y = (c1.dot(l2) * l2 + c2.dot(l1) * l1) / n2;
  r.d = (c2 - c1).dot(n) / std::sqrt(n2);
  r.mu = lam1 + lam2 + r.d * l1.dot(l2) / std::sqrt(n2);
  return r;
}

RigidMotion se3_exp(const Screw& s) {
  const Vec3& w = s.v;
  const Vec3& u = s.t;
  const double th = w.norm();
  RigidMotion M;
  if (th < 1e-12) {
    M.R = Mat3::Identity() + cross_mat(w);
    M.t = u;
    return M;
  }
  M.R = Eigen::AngleAxisd(th, w / th).toRotationMatrix();
  Mat3 W = cross_mat(w);
  Mat3 V = Mat3::Identity() + ((1.0 - std::cos(th)) / (th * th)) * W +
           ((th - std::sin(th)) / (th * th * th)) * (W * W);
  M.t = V * u;
  return M;
}

Multivector se3_bivector(const RigidMotion& M) {
  ScrewParams p = rigid_params(M);
  if (std::abs(p.theta) < 1e-12) return bv_EpEp(M.t) * -0.5;
  Vec3 tv = p.theta * p.v;
  Vec3 m = p.theta * p.c.cross(p.v) + p.d * p.v;
  return (bv_EgEp(tv) - bv_ElEp(tv) - bv_EpEp(m)) * 0.5;
}

// sl(4) <-> Lambda^2 ------------------------------------------------------

Mat6 sl4_to_mat6(const Mat4& M) {
  if (std::abs(M.trace()) > 1e-9 * (1.0 + M.norm()))
    fail("NotTraceless", "sl4_to_mat6: trace(M) != 0");
  Mat3 N = M.block<3, 3>(1, 1);
  Vec3 n0 = M.block<1, 3>(0, 1).transpose();
  Vec3 m0 = M.block<3, 1>(1, 0);
  double tr = N.trace();
  Mat6 B;
  B.block<3, 3>(0, 0) = -tr * Mat3::Identity() + N;
  B.block<3, 3>(0, 3) = -cross_mat(n0);
  B.block<3, 3>(3, 0) = cross_mat(m0);
  B.block<3, 3>(3, 3) = tr * Mat3::Identity() - N.transpose();
  return B;
}

Multivector sl4_to_bivector(const Mat4& M) {
  Mat3 N = M.block<3, 3>(1, 1);
  Vec3 n0 = M.block<1, 3>(0, 1).transpose();
  Vec3 m0 = M.block<3, 1>(1, 0);
  Vec3 n1 = N.diagonal();
  Vec3 n2(N(1, 2), N(2, 0), N(0, 1));
  Vec3 n3(N(2, 1), N(0, 2), N(1, 0));
  return (bv_EpEp(m0) * -1.0 + bv_EE(n0) - bv_EeqEp(n1) + bv_ElEp(n2) +
          bv_EgEp(n3)) *
         0.5;
}

Mat4 bivector_to_sl4(const Multivector& B) {
  if (norm(B - grade_project(B, 2)) > 1e-9 * (1.0 + norm(B)))
    fail("NotBivector", "bivector_to_sl4: mixed grade input");
  Vec3 n0 = 2.0 * extract3(B, bv_EE);
  Vec3 m0 = -2.0 * extract3(B, bv_EpEp);
  Vec3 n2 = 2.0 * extract3(B, bv_ElEp);
  Vec3 n3 = 2.0 * extract3(B, bv_EgEp);
  Vec3 n1 = -2.0 * extract3(B, bv_EeqEp);
  Mat3 N = Mat3(n1.asDiagonal()) + cyc_skew(n2) + cyc_skew(n3).transpose();
  Mat4 M;
  M(0, 0) = -N.trace();
  M.block<1, 3>(0, 1) = n0.transpose();
  M.block<3, 1>(1, 0) = m0;
  M.block<3, 3>(1, 1) = N;
  return M;
}

// Subalgebra cross products ----------------------------------------------

Screw algebra_cross(const Screw& s1, const Screw& s2) {
  require_tag(s1, s2, "algebra_cross");
  const Vec3 &x1 = s1.v, &y1 = s1.t, &x2 = s2.v, &y2 = s2.t;
  Screw r;
  r.algebra = s1.algebra;
  switch (s1.algebra) {
    case Algebra::se3:
    case Algebra::so301:
      r.v = x1.cross(x2);
      r.t = x1.cross(y2) + y1.cross(x2);
      break;
    case Algebra::so4:
      r.v = x1.cross(x2) + y1.cross(y2);
      r.t = x1.cross(y2) + y1.cross(x2);
      break;
    case Algebra::so31:
      r.v = x1.cross(x2) - y1.cross(y2);
      r.t = x1.cross(y2) + y1.cross(x2);
      break;
    case Algebra::so22:
      r.v = times1(x1, x2) + y1.cross(y2);
      r.t = times2(y1, x2) - times2(y2, x1);
      break;
    case Algebra::so211:
      r.v = times1(x1, x2);
      r.t = times2(y1, x2) - times2(y2, x1);
      break;
    case Algebra::gad:
      r.v = odot(x1, y2) - odot(y1, x2);
      r.t = Vec3::Zero();
      break;
  }
  return r;
}

Multivector qp_lift(const Screw& s) {
  return qp_Q(s.algebra, s.v) + qp_P(s.algebra, s.t);
}

Screw qp_drop(Algebra tag, const Multivector& B) {
  Multivector basis[6];
  for (int i = 0; i < 3; ++i) {
    basis[i] = qp_Q(tag, Vec3::Unit(i));
    basis[3 + i] = qp_P(tag, Vec3::Unit(i));
  }
  Mat6 G;
  Vec6 rhs;
  for (int i = 0; i < 6; ++i) {
    rhs[i] = cdot(basis[i], B);
    for (int j = 0; j < 6; ++j) G(i, j) = cdot(basis[i], basis[j]);
  }
  Vec6 c = G.partialPivLu().solve(rhs);
  Screw r;
  r.algebra = tag;
  r.v = c.head<3>();
  r.t = c.tail<3>();
  return r;
}

Trivector33 algebra_trivector(Algebra tag) {
  Trivector33 F0 = rep_point(HomPoint(1.0, Vec3::Zero()));
  Trivector33 F1 = rep_point(HomPoint(0.0, Vec3::UnitX()));
  Trivector33 F2 = rep_point(HomPoint(0.0, Vec3::UnitY()));
  Trivector33 F3 = rep_point(HomPoint(0.0, Vec3::UnitZ()));
  switch (tag) {
    case Algebra::se3:
    case Algebra::so301:
      return F1 + F2 + F3;
    case Algebra::so4:
      return F0 + F1 + F2 + F3;
    case Algebra::so31:
      return F0 * -1.0 + F1 + F2 + F3;
    case Algebra::so22:
      // Overall sign fixed so that trivector_cross realizes algebra_cross
      // (not its negative) for every tag.
      return F0 + F1 + F2 * -1.0 + F3 * -1.0;
    case Algebra::so211:
      return F1 + F2 * -1.0 + F3 * -1.0;
    case Algebra::gad:
      fail("NoTrivector", "algebra_trivector: gad has no trivector form");
  }
  fail("UnknownAlgebra", "algebra_trivector: bad tag");
}

Vec3 vector_product(const Vec3& x, const Vec3& y, VectorProduct kind) {
  switch (kind) {
    case VectorProduct::odot:
      return odot(x, y);
    case VectorProduct::star:
      return star(x, y);
    case VectorProduct::times1:
      return times1(x, y);
    case VectorProduct::times2:
      return times2(x, y);
  }
  fail("UnknownProduct", "vector_product: bad kind");
}

// Superscrew --------------------------------------------------------------

Superscrew superscrew_from_sl4(const Mat4& M) {
  if (std::abs(M.trace()) > 1e-9 * (1.0 + M.norm()))
    fail("NotTraceless", "superscrew_from_sl4: trace(M) != 0");
  Multivector B = sl4_to_bivector(M);
  Superscrew s;
  s.x[0] = extract3(B, bv_EE);
  s.x[1] = extract3(B, bv_EpEp);
  s.x[2] = extract3(B, bv_EeqEp3);
  Vec3 lo = extract3(B, bv_ElEp);
  Vec3 hi = extract3(B, bv_EgEp);
  s.x[3] = (lo + hi) * 0.5;
  s.x[4] = (hi - lo) * 0.5;
  return s;
}

Mat4 superscrew_to_sl4(const Superscrew& s) {
  Multivector B = bv_EE(s.x[0]) + bv_EpEp(s.x[1]) + bv_EeqEp3(s.x[2]) +
                  bv_EgEp(s.x[3] + s.x[4]) + bv_ElEp(s.x[3] - s.x[4]);
  return bivector_to_sl4(B);
}

Superscrew superscrew_bracket(const Superscrew& a, const Superscrew& b) {
  const Vec3 &x1 = a.x[0], &x2 = a.x[1], &x3 = a.x[2], &x4 = a.x[3],
             &x5 = a.x[4];
  const Vec3 &y1 = b.x[0], &y2 = b.x[1], &y3 = b.x[2], &y4 = b.x[3],
             &y5 = b.x[4];
  Superscrew z;
  z.x[0] = -odot(x1, y3) + odot(x3, y1) + star(x1, y4) - star(x4, y1) +
           x1.cross(y5) + x5.cross(y1);
  z.x[1] = -star(x2, y4) + star(x4, y2) + odot(x2, y3) - odot(x3, y2) +
           x2.cross(y5) + x5.cross(y2);
  z.x[2] = (-x1.dot(y2) + x2.dot(y1)) * kOnes - odot(x1, y2) + odot(x2, y1) +
           2.0 * (odot(x4, y5) - odot(x5, y4)).cross(kOnes);
  z.x[3] = 0.5 * (star(x1, y2) - star(x2, y1)) + odot(x3.cross(kOnes), y5) -
           odot(x5, y3.cross(kOnes)) - x4.cross(y5) - x5.cross(y4);
  z.x[4] = 0.5 * (x1.cross(y2) + x2.cross(y1)) + odot(x3.cross(kOnes), y4) -
           odot(x4, y3.cross(kOnes)) + x4.cross(y4) + x5.cross(y5);
  return z;
}

// Generator bivectors ------------------------------------------------------

Multivector perspectivity_generator(const Vec3& x) { return bv_EE(x) * 0.5; }

Multivector dilation_generator(const Vec3& t) { return bv_EeqEp(t) * -0.5; }

Multivector shear_generator(int family, const Vec3& t) {
  if (family < 1 || family > 6)
    fail("UnknownFamily", "shear_generator: family must be 1..6");
  // Family bases as ordered triples of E_iE_j' blades; the middle role is
  // resolved below as the unique blade commuting with the other two.
  static const int gens[6][3][2] = {
      {{0, 4}, {0, 5}, {1, 5}},  // E12', E13', E23'
      {{0, 4}, {0, 5}, {2, 4}},  // E12', E13', E32'
      {{1, 3}, {1, 5}, {2, 3}},  // E21', E23', E31'
      {{1, 3}, {1, 5}, {0, 5}},  // E21', E23', E13'
      {{2, 3}, {2, 4}, {0, 4}},  // E31', E32', E12'
      {{2, 3}, {2, 4}, {1, 3}},  // E31', E32', E21'
  };
  Multivector U[3];
  double coeff[3];
  for (int k = 0; k < 3; ++k) {
    int i = gens[family - 1][k][0], j = gens[family - 1][k][1];
    U[k] = blade_of({i, j});
    // Role of each generator by its unordered index pair {i mod 3, j mod 3}
    // within E1..E3: {1,2} carries t3, {2,3} carries t1, {1,3} carries t2.
    int lo = std::min(i % 3, j % 3), hi = std::max(i % 3, j % 3);
    coeff[k] = (lo == 0 && hi == 1) ? t[2] : (lo == 1 ? t[0] : t[1]);
  }
  int center = -1;
  for (int k = 0; k < 3 && center < 0; ++k) {
    bool commutes = true;
    for (int j = 0; j < 3; ++j)
      if (j != k && !is_zero(bivector_comm(U[k], U[j]), 1e-12))
        commutes = false;
    if (commutes) center = k;
  }
  int first = -1, last = -1;
  for (int k = 0; k < 3; ++k) {
    if (k == center) continue;
    if (first < 0)
      first = k;
    else
      last = k;
  }
  // exp picks up a quadratic cross term on the commuting center; with
  // [U_first, U_last] = gamma U_center in the sl(4) picture, subtracting
  // gamma/2 times the product of the outer coefficients makes the group
  // element carry the requested entries exactly.
  Mat4 Ma = bivector_to_sl4(U[first] * 0.5);
  Mat4 Mb = bivector_to_sl4(U[last] * 0.5);
  Mat4 Mc = bivector_to_sl4(U[center] * 0.5);
  Mat4 comm = Ma * Mb - Mb * Ma;
  double gamma = (comm.cwiseProduct(Mc)).sum() / (Mc.cwiseProduct(Mc)).sum();
  coeff[center] -= gamma * coeff[first] * coeff[last] * 0.5;
  return (U[0] * coeff[0] + U[1] * coeff[1] + U[2] * coeff[2]) * 0.5;
}

}  // namespace lg

#pragma once
// Screw algebra on R^{3,3}: the se(3) screw representation and cross
// product, virtual-work pairings via the C3/D3 trivectors, bivector
// exponential forms of rigid motions, the sl(4) <-> Lambda^2(R^{3,3})
// isomorphism, cross products for six further 6-D Lie subalgebras of
// sl(4), and the superscrew representation.

#include <array>

#include "lg/core.hpp"
#include "lg/multivector.hpp"
#include "lg/plucker.hpp"
#include "lg/versor.hpp"

namespace lg {

enum class Algebra { se3, so4, so31, so301, so22, so211, gad };

// Screw pair (v, t); for se3, v is the rotational part and t the moment.
struct Screw {
  Vec3 v = Vec3::Zero();
  Vec3 t = Vec3::Zero();
  Algebra algebra = Algebra::se3;

  Vector33 vec() const { return Vector33(v, t); }
};

// Wrench (f, q): force part f, torque part q.
struct Wrench {
  Vec3 f = Vec3::Zero();
  Vec3 q = Vec3::Zero();
};

// Five-vector encoding of a traceless 4x4 matrix through the bivector
// basis maps EE, E'E', E=E'_3, E>E'+E<E', E>E'-E<E'.
struct Superscrew {
  std::array<Vec3, 5> x{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                        Vec3::Zero(), Vec3::Zero()};
};

// Linear maps from R^3 into Lambda^2(R^{3,3}) --------------------------------

Multivector bv_EE(const Vec3& x);     // x1 E23  + x2 E31  + x3 E12
Multivector bv_EpEp(const Vec3& x);   // x1 E2'3'+ x2 E3'1'+ x3 E1'2'
Multivector bv_ElEp(const Vec3& x);   // x1 E23' + x2 E31' + x3 E12'
Multivector bv_EgEp(const Vec3& x);   // x1 E32' + x2 E13' + x3 E21'
Multivector bv_EeqEp(const Vec3& x);  // x1(E22'+E33') + cyclic
Multivector bv_EeqEp3(const Vec3& x); // x1 F1 + x2 F2 + x3 F3

// Bivector commutator (AB - BA)/2; closed on grade 2.
Multivector bivector_comm(const Multivector& A, const Multivector& B);

// se(3) ----------------------------------------------------------------------

// Error("AlgebraMismatch") unless both are tagged se3.
Screw se3_cross(const Screw& s1, const Screw& s2);

// -(X ^ Y) . T; with T = C3 this is the se(3) cross product.
Vector33 trivector_cross(const Trivector33& T, const Vector33& X,
                         const Vector33& Y);

// X . C3 = E'E'(y) - (E>E' - E<E')(x)  in se(3);
// X . D3 = EE(x)   - (E>E' - E<E')(y)  in so(3,0,1).
Multivector c3_lift(const Vector33& X);
Multivector d3_lift(const Vector33& X);

// ((v,u).(C3+lambda I3)) . ((f,q).(D3+lambda J3)); at lambda=0 this is
// -f.u - 2 q.v.  With classical=true returns f.u + q.v instead (plain
// R^{3,3} pairing of wrench and screw).
double virtual_work(const Screw& motion, const Wrench& wrench,
                    double lambda = 0.0, bool classical = false);

// Common perpendicular data of two se3 screws (normalized internally to
// unit directions and centers with c.l = 0).  Error("ParallelAxes").
struct CommonPerp {
  Vec3 y = Vec3::Zero();  // a point on the common perpendicular
  double d = 0.0;         // signed distance between the axes
  double mu = 0.0;        // screw ratio sum of the cross product
};
CommonPerp common_perpendicular(const Screw& L1, const Screw& L2);

// Exponential: closed-form exp of the se(3) matrix (0 0; t v x I).
RigidMotion se3_exp(const Screw& s);
// Bivector generator 1/2{(E>E'-E<E')(theta v) - E'E'(theta c x v + d v)}
// whose exp_bivector induces the motion; pure translations give
// -E'E'(t)/2.
Multivector se3_bivector(const RigidMotion& M);

// sl(4) <-> so(3,3) <-> Lambda^2 ---------------------------------------------

// Block lift (-tr(N) I + N, -n0 x I; m0 x I, tr(N) I - N^T).
// Error("NotTraceless").
Mat6 sl4_to_mat6(const Mat4& M);
// 1/2{-E'E'(m0) + EE(n0) - E=E'(n1) + E<E'(n2) + E>E'(n3)}.
Multivector sl4_to_bivector(const Mat4& M);
// Inverse of sl4_to_bivector; Error("NotBivector") on mixed grade.
Mat4 bivector_to_sl4(const Multivector& B);

// Subalgebra cross products --------------------------------------------------

// Closed-form cross product of the tag shared by s1 and s2.
// Error("AlgebraMismatch").
Screw algebra_cross(const Screw& s1, const Screw& s2);

// Q(v) + P(t) bivector lift of the tag's screw coordinates; the bivector
// commutator of two lifts is the lift of algebra_cross.
Multivector qp_lift(const Screw& s);
Screw qp_drop(Algebra tag, const Multivector& B);  // inverse on the span

// Signed sum of F(e_i) realizing the tag's cross product on screw pairs
// (x,y) = E(x)+E'(y); Error("NoTrivector") for gad.
Trivector33 algebra_trivector(Algebra tag);

// Componentwise / symmetric / twisted products ------------------------------

enum class VectorProduct { odot, star, times1, times2 };
Vec3 vector_product(const Vec3& x, const Vec3& y, VectorProduct kind);

// Superscrew -----------------------------------------------------------------

Superscrew superscrew_from_sl4(const Mat4& M);  // Error("NotTraceless")
Mat4 superscrew_to_sl4(const Superscrew& s);
// Closed-form sl(4) bracket in superscrew coordinates; equals the packed
// half-commutator (Ma Mb - Mb Ma)/2, the scale at which bivector_comm of
// the corresponding bivectors is reproduced.
Superscrew superscrew_bracket(const Superscrew& a, const Superscrew& b);

// Generator bivectors --------------------------------------------------------

// exp of EE(x)/2 induces the perspectivity (1, x^T; 0, I).
Multivector perspectivity_generator(const Vec3& x);
// exp of -E=E'(t)/2 induces the dilation diag(1, e^{2 t1}, e^{2 t2},
// e^{2 t3}) direction; the sl(4) element is diag(-(t1+t2+t3), t1, t2, t3).
Multivector dilation_generator(const Vec3& t);
// One of the six 3-D shear subalgebras (family 1..6); family 1 generates
// the upper triangular shear by (t1, t2, t3).  Error("UnknownFamily").
Multivector shear_generator(int family, const Vec3& t);

}  // namespace lg

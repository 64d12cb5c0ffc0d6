#pragma once
// The group Pin^sp(3,3): versors in factored form with an optional formal
// T on the left, their adjoint actions on R^{3,3}, T/J conjugations,
// constructors for reflections and rigid-body motions, two-reflection
// normal forms, and 4-factor compression.

#include <optional>
#include <vector>

#include "lg/core.hpp"
#include "lg/multivector.hpp"

namespace lg {

// Connected-component tag of the Pin(3,3) part, determined by the parities
// of the factor count and of the number of negative-square factors.
enum class SpinComponent {
  Spin0,     // even factors, even negative
  Spin1,     // even factors, odd negative
  Spin0Neg,  // odd factors, odd negative
  Spin1Neg,  // odd factors, even negative
};

struct PinSpElement {
  int tflag = 0;                  // T factors mod 2, kept on the left
  std::vector<Vector33> factors;  // product order; rightmost applied first
  Multivector expanded;           // Clifford product of the factors
  SpinComponent component = SpinComponent::Spin0;

  static PinSpElement identity();
  // Error("NotInvertible") when some factor has x.y = 0.
  static PinSpElement from_factors(int tflag, std::vector<Vector33> fs);
};

// Ad*_U X = eps U X U^{-1}, computed as a chain of reflections
// X -> X - 2(X.v)v/v^2 applied right-to-left, then T when tflag is set.
Vector33 adjoint(const PinSpElement& U, const Vector33& X);
Mat6 adjoint_mat6(const PinSpElement& U);
// Outermorphism extension of the adjoint action to multivectors.
Multivector adjoint_apply(const PinSpElement& U, const Multivector& a);

// Factorwise T: (x,y) -> (-x,y); factorwise J: (x,y) -> (y,x).
PinSpElement t_conj(const PinSpElement& U);
PinSpElement j_conj(const PinSpElement& U);

// Group product; T flags are commuted to the left with T U = U^T T.
PinSpElement compose(const PinSpElement& U, const PinSpElement& V);

// Induced 4x4 matrix via the contraction chain of J-modified factors
// (odd positions from the right carry J); normalized to |det|=1 with the
// first significant entry positive.  polarity iff the factor count is odd.
struct VersorMat4 {
  Mat4 A;
  bool polarity = false;
};
VersorMat4 versor_to_mat4(const PinSpElement& U);

// Rigid-body motion x -> Rx + t and its screw decomposition.
struct RigidMotion {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();
};
struct ScrewParams {
  Vec3 v = Vec3::UnitX();  // unit axis direction
  double theta = 0.0;      // rotation angle in [0, pi]
  Vec3 c = Vec3::Zero();   // original center (foot from origin to axis)
  double d = 0.0;          // driving distance t.v
};
// Error("NotARotation") when R is not special orthogonal.
ScrewParams rigid_params(const RigidMotion& M);
Mat4 mat4_of_rigid(const RigidMotion& M);  // blocks (1,0; t,R)

// Rotation of angle pi about the axis through point y in direction x;
// factors (x, -lambda x + x cross y)(x, lambda x + x cross y).
// Error("BadAxis") if x = 0 or x.y != 0; Error("BadRatio") if lambda = 0.
PinSpElement make_pi_rotation(const Vec3& x, const Vec3& y, double lambda);

// Two 4-factor translation constructions for translation by x
// (option 1 and option 2 of the text); y is the auxiliary direction,
// y orthogonal to x (chosen internally when zero).
PinSpElement make_translation_versor(const Vec3& x, int option = 2);

// Two pairs of pi-rotations realizing a rigid motion; mode selects which
// pair absorbs the driving distance.  Falls back to the option-2
// translation factors when theta ~ 0.
enum class RigidFactorization { Opt1, Opt2 };
PinSpElement make_rigid_versor(const RigidMotion& M,
                               RigidFactorization mode =
                                   RigidFactorization::Opt1);

// T (v2,-v2-d v1)(v2,v2-d v1)(v1,-v1)(v1,v1) realizing the reflection in
// the affine plane with unit normal n and offset d; 2 factors when d=0.
// Error("BadNormal") when |n| != 1.
PinSpElement make_plane_reflection(const Vec3& n, double d);

// Normal form of the product of two reflections, classified by the
// signature of span(U,V): families 1..6 of the block-diagonal list.
struct NormalForm {
  int family = 0;        // 1..6
  double theta = 0.0;    // families 1,2
  double lambda = 0.0;   // families 3..6
  Mat4 N = Mat4::Identity();
};
// Error("Degenerate") if U wedge V = 0 or a factor is not invertible.
NormalForm two_reflection_normal_form(const Vector33& U, const Vector33& V);

// 4-factor versor -> 2-factor versor when grade-4 part vanishes and the
// grade-2 part has an invertible vector factor; nullopt otherwise.
std::optional<PinSpElement> try_compress(const PinSpElement& U);

}  // namespace lg

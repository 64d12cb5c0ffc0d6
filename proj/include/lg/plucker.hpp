#pragma once
// Null 3-vector (Pluecker) representations of points and planes, the lifts
// of 4x4 transformations/polarities to 6x6 matrices on R^{3,3}, and the
// recovery of a 4x4 matrix from a matrix in the liftable branches of the
// linear regularity group.

#include <array>
#include <cstdint>

#include "lg/core.hpp"
#include "lg/gc4.hpp"
#include "lg/multivector.hpp"

namespace lg {

// Grade-3 part of a Multivector; the representation of a point or a plane
// as a null 3-space of R^{3,3}.
struct Trivector33 {
  Multivector t;

  Trivector33() = default;
  explicit Trivector33(const Multivector& m);  // Error("NotTrivector") if mixed grade

  Trivector33 operator+(const Trivector33& o) const {
    Trivector33 r;
    r.t = t + o.t;
    return r;
  }
  Trivector33 operator-(const Trivector33& o) const {
    Trivector33 r;
    r.t = t - o.t;
    return r;
  }
  Trivector33 operator*(double s) const {
    Trivector33 r;
    r.t = t * s;
    return r;
  }
};

// The 20 grade-3 blade masks in ascending bit order; fixes the coordinate
// order used by lift3 matrices.
const std::array<uint32_t, 20>& grade3_blades();

// 20-coefficient view in the grade3_blades() order.
Eigen::Matrix<double, 20, 1> trivector_coords(const Trivector33& T);
Trivector33 trivector_from_coords(const Eigen::Matrix<double, 20, 1>& v);

// Scale normalization: divide by the largest-magnitude coefficient and flip
// sign so the first non-negligible coefficient in canonical order is positive.
Trivector33 normalize_null3(const Trivector33& T);

// F(X)  = (e0x)^((e0x).J3) - x0 (e0x)^K2 + x0^2 I3      (point)
// F''(P) = (ce0 Pi)^((ce0 Pi).I3) + d (ce0 Pi)^K2 + d^2 J3  (plane)
Trivector33 rep_point(const HomPoint& X);   // Error("ZeroInput")
Trivector33 rep_plane(const CoPlane& P);    // Error("ZeroInput")

enum class NullKind { Point, Plane };

// T . I33 = +T for points, -T for planes.  Error("NotNull3Space") otherwise.
NullKind classify_null3(const Trivector33& T, double tol = 1e-6);

// Inverse of rep_point / rep_plane up to scale; result normalized to unit
// Euclidean norm with the first non-negligible coordinate positive.
// Error("NotAPoint") / Error("NotAPlane") when T is not such an image.
HomPoint recover_point(const Trivector33& T);
CoPlane recover_plane(const Trivector33& T);

// 6x6 constants: J swaps the E and E' blocks; T = diag(-I,I).
const Mat6& Jmat6();
const Mat6& Tmat6();

// Pluecker transform wedge^2 A: column e_ij -> (A e_i)^(A e_j) in the Witt
// basis; det(lift2(A)) = det(A)^3.  Error("Singular").
Mat6 lift2(const Mat4& A);
// Dual Pluecker transform vee^2 D for a polarity D: (D e_i) v (D e_j);
// det(dual_lift2(D)) = -det(D)^3; dual_lift2(I) = J.  Error("Singular").
Mat6 dual_lift2(const Mat4& D);

// Induced 20x20 action of B on grade-3 coefficients (trilinear wedge
// expansion); parallel version iterates columns under OpenMP, the serial
// reference is kept for testing/benchmarks.
Eigen::Matrix<double, 20, 20> lift3(const Mat6& B);
Eigen::Matrix<double, 20, 20> lift3_serial(const Mat6& B);
// Direct application without materializing the matrix.
Trivector33 lift3_apply(const Mat6& B, const Trivector33& T);

// 4x4 matrix recovery from a linear regularity.
struct Mat4Recovery {
  Mat4 A;
  bool polarity = false;  // branch tag: transformation vs polarity
  int det_sign = +1;      // sign of det of the recovered 4x4 matrix
};

// B must satisfy B^T J B = +-J (else Error("NotRegular")); branches without
// a pre-image raise Error("BranchUnliftable").  Returns A (up to global
// sign, fixed so the first significant entry is positive) with
// lift2/dual_lift2 (possibly T-composed) reproducing B.
Mat4Recovery recover_mat4(const Mat6& B, double tol = 1e-6);

}  // namespace lg

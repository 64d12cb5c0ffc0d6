#pragma once
// Dense multivector arithmetic for the Clifford algebra Cl(3,3) of R^{3,3}
// in the Witt basis E1,E2,E3,E1',E2',E3' with metric
//   Ei . Ej' = delta_ij,   Ei . Ej = Ei' . Ej' = 0.
//
// Blade indexing: 6-bit mask, bit i (0..2) marks E_{i+1}, bit i (3..5) marks
// E'_{i-2}.  A canonical blade is the wedge of its generators in the fixed
// order (E1,E2,E3,E1',E2',E3'), i.e. unprimed ascending, then primed
// ascending.  Grade = popcount(bits).

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "lg/core.hpp"

namespace lg {

struct Multivector {
  std::array<double, 64> c{};  // coefficient per BladeIndex

  static Multivector scalar(double s) {
    Multivector m;
    m.c[0] = s;
    return m;
  }
  static Multivector blade(uint32_t bits, double coeff = 1.0) {
    Multivector m;
    m.c[bits & 63u] = coeff;
    return m;
  }

  Multivector operator+(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < 64; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Multivector operator-(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < 64; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Multivector operator-() const {
    Multivector r;
    for (int i = 0; i < 64; ++i) r.c[i] = -c[i];
    return r;
  }
  Multivector operator*(double s) const {
    Multivector r;
    for (int i = 0; i < 64; ++i) r.c[i] = c[i] * s;
    return r;
  }
  Multivector& operator+=(const Multivector& o) {
    for (int i = 0; i < 64; ++i) c[i] += o.c[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    for (int i = 0; i < 64; ++i) c[i] -= o.c[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (double& v : c) v *= s;
    return *this;
  }
};

inline Multivector operator*(double s, const Multivector& m) { return m * s; }

inline int grade_of(uint32_t bits) { return std::popcount(bits & 63u); }

// Canonical blade from a list of generator indices 0..5 in any order;
// returns the blade scaled by the permutation sign (0 if repeated index).
Multivector blade_of(std::initializer_list<int> gens, double coeff = 1.0);

// Core products ------------------------------------------------------------

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);
// Left contraction: per blade pair, the grade (gb - ga) part of ab.
Multivector left_contraction(const Multivector& a, const Multivector& b);
// "Fat dot" inner product used by the X.T trivector contractions: per
// blade pair, the grade |ga - gb| part of ab.
Multivector inner_product(const Multivector& a, const Multivector& b);
// Scalar part of the geometric product.
double scalar_product(const Multivector& a, const Multivector& b);

Multivector grade_project(const Multivector& a, int k);
Multivector reverse(const Multivector& a);

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}
inline Multivector operator^(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

// Exponential of a pure bivector via power series with scaling-and-squaring
// when ||B|| > 1.  Throws Error("NotBivector") / Error("NoConvergence").
Multivector exp_bivector(const Multivector& B, double tol = 1e-15);

// Utilities ----------------------------------------------------------------

double norm(const Multivector& a);  // Euclidean norm of the 64 coefficients
bool is_zero(const Multivector& a, double tol = kAbsTol);
// True when a and b agree within atol + rtol*max(|a|,|b|) coefficientwise.
bool approx_equal(const Multivector& a, const Multivector& b,
                  double rtol = kRelTol, double atol = kAbsTol);
// max_i |a_i - b_i|
double max_coeff_diff(const Multivector& a, const Multivector& b);

// Blade label ("scalar", "1", "2p", "12p3p", "1231p2p3p", ...) used by the
// JSON serialization; inverse returns the bit mask or throws Error("BadBlade").
std::string blade_label(uint32_t bits);
uint32_t blade_from_label(const std::string& label);

// Named constants ----------------------------------------------------------

const Multivector& I3();   // E123
const Multivector& J3();   // E1'2'3'
const Multivector& I33();  // E123 ^ E1'2'3' (pseudoscalar, squares to +1)
const Multivector& K2();   // E11' + E22' + E33' (symplectic form)
const Multivector& C3();   // E12'3' + E23'1' + E31'2'
const Multivector& D3();   // E1'23 + E2'31 + E3'12

// Vectors of R^{3,3} in screw form ----------------------------------------

// Screw pair (x, y) standing for E(x) + E'(y); inner product
// (x1,y1).(x2,y2) = x1.y2 + y1.x2; invertible iff x.y != 0.
struct Vector33 {
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();

  Vector33() = default;
  Vector33(const Vec3& x_, const Vec3& y_) : x(x_), y(y_) {}

  Multivector mv() const;
  Vec6 v6() const {
    Vec6 v;
    v << x, y;
    return v;
  }
  static Vector33 from_v6(const Vec6& v) {
    return Vector33(v.head<3>(), v.tail<3>());
  }
  static Vector33 from_mv(const Multivector& m);  // Error("NotVector") if not grade 1

  double dot(const Vector33& o) const { return x.dot(o.y) + y.dot(o.x); }
  double square() const { return 2.0 * x.dot(y); }
  bool invertible(double tol = kAbsTol) const {
    return std::abs(x.dot(y)) > tol;
  }

  Vector33 operator+(const Vector33& o) const {
    return Vector33(x + o.x, y + o.y);
  }
  Vector33 operator-(const Vector33& o) const {
    return Vector33(x - o.x, y - o.y);
  }
  Vector33 operator*(double s) const { return Vector33(x * s, y * s); }
};

// Extend a linear map B on R^{3,3} (columns = images of E1..E3,E1'..E3') to
// the whole exterior algebra as an outermorphism and apply it to a.
Multivector apply_outermorphism(const Mat6& B, const Multivector& a);

}  // namespace lg

#include "lg/versor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace lg {
namespace {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

// Bilinear form L((x,y)): X -> M.X in CL(R^4); as a matrix
// ((0, x^T), (-x, -[y]x)) acting on homogeneous point coordinates.
Mat4 bilinear_mat(const Vector33& m) {
  Mat4 L = Mat4::Zero();
  L.block<1, 3>(0, 1) = m.x.transpose();
  L.block<3, 1>(1, 0) = -m.x;
  L.block<3, 3>(1, 1) = -skew(m.y);
  return L;
}

// Adjoint action of a single vector: eps v X v^{-1} with eps = -sign(v^2),
// i.e. the plain reflection X - 2(X.v)v/v^2 for v^2 < 0 and its negative
// for v^2 > 0.  This is the sign choice under which the induced map on
// null 3-spaces descends to a 4x4 matrix.
Vector33 reflect(const Vector33& X, const Vector33& v) {
  double s = 2.0 * X.dot(v) / v.square();
  Vector33 r = X - v * s;
  return v.square() > 0 ? r * -1.0 : r;
}

SpinComponent classify_component(const std::vector<Vector33>& fs) {
  int neg = 0;
  for (const Vector33& f : fs)
    if (f.square() < 0) ++neg;
  bool odd_total = fs.size() % 2;
  bool odd_neg = neg % 2;
  if (!odd_total) return odd_neg ? SpinComponent::Spin1 : SpinComponent::Spin0;
  return odd_neg ? SpinComponent::Spin0Neg : SpinComponent::Spin1Neg;
}

// Scale to |det| = 1 and flip sign so the first significant entry is
// positive.
Mat4 canonicalize(Mat4 A) {
  double det = std::abs(A.determinant());
  if (det > kAbsTol) A *= std::pow(det, -0.25);
  double ref = A.cwiseAbs().maxCoeff();
  for (int i = 0; i < 16; ++i) {
    double v = A(i / 4, i % 4);
    if (std::abs(v) > 1e-9 * ref) {
      if (v < 0) A = -A;
      break;
    }
  }
  return A;
}

Vec3 any_unit_orthogonal(const Vec3& v) {
  Vec3 a = std::abs(v.x()) < 0.9 * v.norm() ? Vec3::UnitX() : Vec3::UnitY();
  return v.cross(a).normalized();
}

}  // namespace

PinSpElement PinSpElement::identity() {
  PinSpElement u;
  u.expanded = Multivector::scalar(1.0);
  return u;
}

PinSpElement PinSpElement::from_factors(int tflag, std::vector<Vector33> fs) {
  PinSpElement u;
  u.tflag = tflag & 1;
  u.expanded = Multivector::scalar(1.0);
  for (const Vector33& f : fs) {
    if (!f.invertible(1e-12 * std::max(1.0, f.v6().squaredNorm())))
      fail("NotInvertible", "PinSpElement: factor with x.y = 0");
    u.expanded = u.expanded * f.mv();
  }
  u.factors = std::move(fs);
  u.component = classify_component(u.factors);
  return u;
}

Vector33 adjoint(const PinSpElement& U, const Vector33& X) {
  Vector33 r = X;
  for (auto it = U.factors.rbegin(); it != U.factors.rend(); ++it)
    r = reflect(r, *it);
  if (U.tflag) r = Vector33(-r.x, r.y);
  return r;
}

Mat6 adjoint_mat6(const PinSpElement& U) {
  Mat6 m;
  for (int i = 0; i < 6; ++i) {
    Vec6 e = Vec6::Zero();
    e[i] = 1.0;
    m.col(i) = adjoint(U, Vector33::from_v6(e)).v6();
  }
  return m;
}

Multivector adjoint_apply(const PinSpElement& U, const Multivector& a) {
  return apply_outermorphism(adjoint_mat6(U), a);
}

PinSpElement t_conj(const PinSpElement& U) {
  std::vector<Vector33> fs;
  fs.reserve(U.factors.size());
  for (const Vector33& f : U.factors) fs.emplace_back(-f.x, f.y);
  return PinSpElement::from_factors(U.tflag, std::move(fs));
}

PinSpElement j_conj(const PinSpElement& U) {
  std::vector<Vector33> fs;
  fs.reserve(U.factors.size());
  for (const Vector33& f : U.factors) fs.emplace_back(f.y, f.x);
  return PinSpElement::from_factors(U.tflag, std::move(fs));
}

PinSpElement compose(const PinSpElement& U, const PinSpElement& V) {
  // U V = T^a F_U T^b F_V = T^{a+b} (F_U)^{T^b} F_V.
  PinSpElement left = (V.tflag ? t_conj(U) : U);
  std::vector<Vector33> fs = left.factors;
  fs.insert(fs.end(), V.factors.begin(), V.factors.end());
  return PinSpElement::from_factors(U.tflag ^ V.tflag, std::move(fs));
}

VersorMat4 versor_to_mat4(const PinSpElement& U) {
  const int r = static_cast<int>(U.factors.size());
  Mat4 A = Mat4::Identity();
  for (int i = 0; i < r; ++i) {
    // positions counted from the right; odd positions carry J
    Vector33 w = U.factors[i];
    if ((r - i) % 2 == 1) w = Vector33(w.y, w.x);
    A = A * bilinear_mat(w);
  }
  if (U.tflag) {
    Mat4 d = Mat4::Identity();
    d(0, 0) = -1.0;
    A = d * A;
  }
  VersorMat4 out;
  out.A = canonicalize(A);
  out.polarity = (r % 2 == 1);
  return out;
}

ScrewParams rigid_params(const RigidMotion& M) {
  if ((M.R.transpose() * M.R - Mat3::Identity()).norm() > 1e-8 ||
      M.R.determinant() < 0)
    fail("NotARotation", "rigid_params: R is not a rotation matrix");
  Eigen::AngleAxisd aa(M.R);
  ScrewParams p;
  p.theta = aa.angle();
  p.v = aa.axis();
  p.d = M.t.dot(p.v);
  double s = std::sin(p.theta / 2.0);
  if (std::abs(s) > 1e-8) {
    Vec3 tperp = M.t - p.d * p.v;
    Mat3 half = Eigen::AngleAxisd((M_PI - p.theta) / 2.0, p.v)
                    .toRotationMatrix();
    p.c = (half * tperp) / (2.0 * s);
  }
  return p;
}

Mat4 mat4_of_rigid(const RigidMotion& M) {
  Mat4 A = Mat4::Identity();
  A.block<3, 3>(1, 1) = M.R;
  A.block<3, 1>(1, 0) = M.t;
  return A;
}

PinSpElement make_pi_rotation(const Vec3& x, const Vec3& y, double lambda) {
  if (x.norm() < kAbsTol ||
      std::abs(x.dot(y)) > 1e-9 * std::max(1.0, x.norm() * y.norm()))
    fail("BadAxis", "make_pi_rotation: need x != 0 and x.y = 0");
  if (std::abs(lambda) < kAbsTol)
    fail("BadRatio", "make_pi_rotation: lambda must be nonzero");
  // the pair (x, -l x + w)(x, l x + w) rotates by pi about the axis through
  // x cross w / |x|^2 in direction x; w = y cross x puts the axis through y
  Vec3 m = y.cross(x);
  return PinSpElement::from_factors(
      0, {Vector33(x, -lambda * x + m), Vector33(x, lambda * x + m)});
}

PinSpElement make_translation_versor(const Vec3& x, int option) {
  if (x.norm() < kAbsTol) {
    Vector33 f(Vec3::UnitX(), Vec3::UnitX());
    return PinSpElement::from_factors(0, {f, f});  // scalar versor
  }
  Vec3 y = any_unit_orthogonal(x);
  if (option == 1) {
    // the option-1 pattern with seed vector u translates by u/|u|^2
    Vec3 u = x / x.squaredNorm();
    return PinSpElement::from_factors(
        0, {Vector33(u, u - y + u.cross(y)), Vector33(u, u + u.cross(y)),
            Vector33(u, u + y), Vector33(u, u)});
  }
  Vec3 h = 0.5 * x.cross(y);
  return PinSpElement::from_factors(
      0, {Vector33(y, -y + h), Vector33(y, y + h), Vector33(y, -y),
          Vector33(y, y)});
}

PinSpElement make_rigid_versor(const RigidMotion& M, RigidFactorization mode) {
  ScrewParams p = rigid_params(M);
  double s = std::sin(p.theta / 2.0), c = std::cos(p.theta / 2.0);
  if (std::abs(s) < 1e-8) return make_translation_versor(M.t, 2);

  Vec3 v1 = any_unit_orthogonal(p.v);
  Vec3 v2 = p.v.cross(v1);
  double t1 = M.t.dot(v1), t2 = M.t.dot(v2), t3 = p.d;
  double a2 = -(c * t1 + s * t2) / (2.0 * s);
  double b2 = -t1 / (2.0 * s);
  double a3, b3;
  if (mode == RigidFactorization::Opt1) {
    b3 = 0.0;
    a3 = -t3 / 2.0;
  } else {
    a3 = 0.0;
    b3 = t3 / 2.0;
  }
  Vec3 x2 = c * v1 - s * v2;
  Vec3 wa = a2 * p.v - a3 * v2;
  Vec3 wb = b2 * p.v - b3 * (s * v1 + c * v2);
  return PinSpElement::from_factors(
      0, {Vector33(v1, -v1 + wa), Vector33(v1, v1 + wa),
          Vector33(x2, -x2 + wb), Vector33(x2, x2 + wb)});
}

PinSpElement make_plane_reflection(const Vec3& n, double d) {
  if (std::abs(n.norm() - 1.0) > 1e-9)
    fail("BadNormal", "make_plane_reflection: |n| must be 1");
  if (std::abs(d) < kAbsTol) {
    return PinSpElement::from_factors(1,
                                      {Vector33(n, -n), Vector33(n, n)});
  }
  Vec3 v1 = any_unit_orthogonal(n);
  Vec3 v2 = n.cross(v1);
  return PinSpElement::from_factors(
      1, {Vector33(v2, -v2 - d * v1), Vector33(v2, v2 - d * v1),
          Vector33(v1, -v1), Vector33(v1, v1)});
}

NormalForm two_reflection_normal_form(const Vector33& U, const Vector33& V) {
  double nu = U.v6().norm(), nv = V.v6().norm();
  if (!U.invertible(1e-12 * nu * nu) || !V.invertible(1e-12 * nv * nv))
    fail("Degenerate", "two_reflection_normal_form: factor not invertible");
  Multivector w = U.mv() ^ V.mv();
  if (norm(w) < 1e-9 * nu * nv)
    fail("Degenerate", "two_reflection_normal_form: U wedge V = 0");

  Eigen::Matrix2d G;
  G << U.square(), U.dot(V), U.dot(V), V.square();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
  double tol = 1e-9 * std::max(1.0, G.norm());
  int pos = 0, neg = 0;
  for (int i = 0; i < 2; ++i) {
    if (es.eigenvalues()[i] > tol) ++pos;
    else if (es.eigenvalues()[i] < -tol) ++neg;
  }

  NormalForm nf;
  auto rot2 = [](double c, double s) {
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
  };
  Mat4 M = versor_to_mat4(PinSpElement::from_factors(0, {U, V})).A;

  if (pos == 2 || neg == 2) {
    // definite plane: pair of equal (family 1) or opposite (family 2)
    // rotation blocks
    double cth = G(0, 1) / std::sqrt(G(0, 0) * G(1, 1));
    if (neg == 2) cth = -cth;
    cth = std::clamp(cth, -1.0, 1.0);
    nf.family = (pos == 2) ? 1 : 2;
    nf.theta = std::acos(cth);
    double c = cth, s = std::sin(nf.theta);
    nf.N = Mat4::Zero();
    nf.N.block<2, 2>(0, 0) = (nf.family == 1) ? rot2(c, s) : rot2(c, -s);
    nf.N.block<2, 2>(2, 2) = rot2(c, s);
    return nf;
  }

  if (pos + neg == 1) {
    // degenerate plane: unipotent families 3 / 4
    nf.family = (pos == 1) ? 3 : 4;
    if (M.trace() < 0) M = -M;
    double lam = (M - Mat4::Identity()).norm() / std::sqrt(2.0);
    nf.lambda = lam;
    nf.N = Mat4::Identity();
    if (nf.family == 3) {
      nf.N(0, 1) = -lam;
      nf.N(3, 2) = lam;
    } else {
      nf.N(0, 1) = lam;
      nf.N(3, 2) = lam;
    }
    return nf;
  }

  // signature (1,1): real eigenvalue pairs; family by sign pattern
  Eigen::EigenSolver<Mat4> ev(M);
  std::array<double, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = ev.eigenvalues()[i].real();
  std::sort(e.begin(), e.end());
  int negev = 0;
  for (double x : e)
    if (x < 0) ++negev;
  if (negev == 2) {
    nf.family = 6;
    nf.lambda = 0.5 * (-e[0] - e[1]);  // the negative pair has magnitude lam
    nf.N = Mat4::Identity() / nf.lambda;
    nf.N(2, 2) = nf.N(3, 3) = -nf.lambda;
  } else {
    nf.family = 5;
    std::array<double, 4> a;
    for (int i = 0; i < 4; ++i) a[i] = std::abs(e[i]);
    std::sort(a.begin(), a.end());
    nf.lambda = 0.5 * (a[2] + a[3]);
    nf.N = Mat4::Identity() / nf.lambda;
    nf.N(2, 2) = nf.N(3, 3) = nf.lambda;
  }
  return nf;
}

std::optional<PinSpElement> try_compress(const PinSpElement& U) {
  if (U.factors.size() != 4 || U.tflag) return std::nullopt;
  const Multivector& E = U.expanded;
  double scale = std::max(1.0, norm(E));
  if (norm(grade_project(E, 4)) > 1e-9 * scale) return std::nullopt;
  double s0 = E.c[0];
  Multivector B = grade_project(E, 2);

  if (norm(B) < 1e-10 * scale) {
    // scalar versor
    Vector33 z(Vec3::UnitX(), Vec3::UnitX());
    Vector33 y1 = z * (s0 / z.square());
    if (!y1.invertible(1e-12)) return std::nullopt;
    return PinSpElement::from_factors(0, {y1, z});
  }
  if (norm(B ^ B) > 1e-8 * scale * scale) return std::nullopt;

  // column space of the antisymmetric coefficient matrix spans {a, b}
  Mat6 C = Mat6::Zero();
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      double coeff = (blade_of({i, j}).c[(1u << i) | (1u << j)] > 0 ? 1.0
                                                                    : -1.0) *
                     B.c[(1u << i) | (1u << j)];
      C(i, j) = coeff;
      C(j, i) = -coeff;
    }
  Eigen::JacobiSVD<Mat6> svd(C, Eigen::ComputeFullU);
  if (svd.singularValues()[1] < 1e-9 * svd.singularValues()[0])
    return std::nullopt;
  Vector33 p = Vector33::from_v6(svd.matrixU().col(0) *
                                 svd.singularValues()[0]);
  Vector33 q = Vector33::from_v6(svd.matrixU().col(1) *
                                 svd.singularValues()[1]);

  // pick an invertible b in span{p, q}
  Vector33 b = p;
  for (const Vector33& cand : {p, q, p + q, p - q}) {
    if (std::abs(cand.square()) >
        1e-6 * std::max(1.0, cand.v6().squaredNorm())) {
      b = cand;
      break;
    }
  }
  if (!b.invertible(1e-9)) return std::nullopt;
  Vector33 wv = (std::abs(b.v6().normalized().dot(p.v6().normalized())) < 0.9)
                    ? p
                    : q;
  Multivector wb = wv.mv() ^ b.mv();
  // B = gamma (w ^ b)
  int k = 0;
  for (int i = 1; i < 64; ++i)
    if (std::abs(wb.c[i]) > std::abs(wb.c[k])) k = i;
  if (std::abs(wb.c[k]) < 1e-12) return std::nullopt;
  double gamma = B.c[k] / wb.c[k];
  Vector33 a = wv * gamma;
  if (max_coeff_diff(a.mv() ^ b.mv(), B) > 1e-7 * scale) return std::nullopt;

  Vector33 y1 = a + b * ((s0 - a.dot(b)) / b.square());
  if (!y1.invertible(1e-10)) return std::nullopt;
  PinSpElement out = PinSpElement::from_factors(0, {y1, b});
  if (max_coeff_diff(out.expanded, E) > 1e-7 * scale) return std::nullopt;
  return out;
}

}  // namespace lg

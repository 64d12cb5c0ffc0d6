#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lg/plucker.hpp"
#include "lg/versor.hpp"
#include "test_util.hpp"

using namespace lg;
using lgtest::Rng;

namespace {

double mat4_diff_up_to_sign(const Mat4& a, const Mat4& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

PinSpElement rand_versor(Rng& rng, int r, int tflag) {
  std::vector<Vector33> fs;
  for (int i = 0; i < r; ++i) fs.push_back(lgtest::rand_invertible(rng));
  return PinSpElement::from_factors(tflag, std::move(fs));
}

Eigen::Vector4d char_poly(const Mat4& m) {
  // coefficients of det(xI - m) below the leading x^4 term
  Eigen::Matrix<double, 5, 1> c;
  c.setZero();
  c[0] = 1.0;
  Mat4 p = Mat4::Identity();
  // Faddeev-LeVerrier
  for (int k = 1; k <= 4; ++k) {
    p = m * p;
    c[k] = -p.trace() / k;
    p += c[k] * Mat4::Identity();
  }
  return c.tail<4>();
}

}  // namespace

TEST_CASE("from_factors expands the product; null factors rejected") {
  Rng rng(31);
  Vector33 u = lgtest::rand_invertible(rng);
  Vector33 v = lgtest::rand_invertible(rng);
  PinSpElement U = PinSpElement::from_factors(0, {u, v});
  CHECK(max_coeff_diff(U.expanded, u.mv() * v.mv()) <= 1e-12);
  CHECK_THROWS_AS(
      PinSpElement::from_factors(0, {Vector33(Vec3::UnitX(), Vec3::UnitY())}),
      Error);
}

TEST_CASE("adjoint preserves the R^{3,3} inner product") {
  Rng rng(32);
  for (int k = 0; k < 100; ++k) {
    PinSpElement U = rand_versor(rng, 1 + k % 4, k % 2);
    Vector33 X = lgtest::rand_vector33(rng);
    Vector33 Y = lgtest::rand_vector33(rng);
    // the formal T factor is an anti-isometry: it flips the pairing sign
    double sgn = U.tflag ? -1.0 : 1.0;
    CHECK(adjoint(U, X).dot(adjoint(U, Y)) ==
          doctest::Approx(sgn * X.dot(Y)).epsilon(1e-9));
  }
}

TEST_CASE("adjoint agrees with eps U X U^{-1} on the expanded product") {
  Rng rng(33);
  for (int k = 0; k < 60; ++k) {
    int r = 1 + k % 4;
    PinSpElement U = rand_versor(rng, r, 0);
    Vector33 X = lgtest::rand_vector33(rng);
    // U^{-1} via reversed factors scaled by the squares
    Multivector inv = Multivector::scalar(1.0);
    for (auto it = U.factors.rbegin(); it != U.factors.rend(); ++it)
      inv = inv * (it->mv() * (1.0 / it->square()));
    double eps = (U.component == SpinComponent::Spin1 ||
                  U.component == SpinComponent::Spin0Neg)
                     ? -1.0
                     : 1.0;
    Multivector lhs = U.expanded * X.mv() * inv * eps;
    double scale = std::max(1.0, norm(lhs));
    CHECK(max_coeff_diff(lhs, adjoint(U, X).mv()) <= 1e-9 * scale);
  }
}

TEST_CASE("compose is a homomorphism of adjoint actions") {
  Rng rng(34);
  for (int k = 0; k < 80; ++k) {
    PinSpElement U = rand_versor(rng, 1 + k % 3, k % 2);
    PinSpElement V = rand_versor(rng, 1 + (k / 2) % 3, (k / 3) % 2);
    Mat6 lhs = adjoint_mat6(compose(U, V));
    Mat6 rhs = adjoint_mat6(U) * adjoint_mat6(V);
    // equality is projective: commuting a T past an odd versor flips the
    // representative sign
    CHECK(std::min((lhs - rhs).cwiseAbs().maxCoeff(),
                   (lhs + rhs).cwiseAbs().maxCoeff()) <= 1e-10);
  }
}

TEST_CASE("T and J conjugations act as expected on the adjoint") {
  Rng rng(35);
  Mat6 T6 = Mat6::Identity();
  T6.block<3, 3>(0, 0) = -Mat3::Identity();
  for (int k = 0; k < 50; ++k) {
    PinSpElement U = rand_versor(rng, 1 + k % 4, k % 2);
    Mat6 A = adjoint_mat6(U);
    // T conjugation: equal up to the projective sign (T flips factor squares)
    Mat6 tc = adjoint_mat6(t_conj(U));
    Mat6 tr = T6 * A * T6;
    CHECK(std::min((tc - tr).cwiseAbs().maxCoeff(),
                   (tc + tr).cwiseAbs().maxCoeff()) <= 1e-10);
    CHECK((adjoint_mat6(j_conj(U)) - A.inverse().transpose())
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
  }
}

TEST_CASE("spin component tracks factor parities") {
  Vector33 pos(Vec3::UnitX(), Vec3::UnitX());   // square +2
  Vector33 neg(Vec3::UnitX(), -Vec3::UnitX());  // square -2
  CHECK(PinSpElement::from_factors(0, {pos, pos}).component ==
        SpinComponent::Spin0);
  CHECK(PinSpElement::from_factors(0, {pos, neg}).component ==
        SpinComponent::Spin1);
  CHECK(PinSpElement::from_factors(0, {neg}).component ==
        SpinComponent::Spin0Neg);
  CHECK(PinSpElement::from_factors(0, {pos}).component ==
        SpinComponent::Spin1Neg);
}

TEST_CASE("versor_to_mat4 matches the matrix recovered from the adjoint") {
  Rng rng(36);
  for (int k = 0; k < 200; ++k) {
    int r = 1 + k % 4;
    PinSpElement U = rand_versor(rng, r, k % 2);
    VersorMat4 vm = versor_to_mat4(U);
    Mat4Recovery rec = recover_mat4(adjoint_mat6(U));
    CHECK(vm.polarity == rec.polarity);
    double d = mat4_diff_up_to_sign(vm.A, rec.A);
    CHECK(d <= 1e-7 * std::max(1.0, vm.A.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("single reflection induces the bilinear-form polarity") {
  Rng rng(37);
  for (int k = 0; k < 50; ++k) {
    Vector33 v = lgtest::rand_invertible(rng);
    VersorMat4 vm = versor_to_mat4(PinSpElement::from_factors(0, {v}));
    CHECK(vm.polarity);
    Mat4 L = Mat4::Zero();
    L.block<1, 3>(0, 1) = v.y.transpose();
    L.block<3, 1>(1, 0) = -v.y;
    Mat3 sk;
    sk << 0, -v.x.z(), v.x.y(), v.x.z(), 0, -v.x.x(), -v.x.y(), v.x.x(), 0;
    L.block<3, 3>(1, 1) = -sk;
    L *= std::pow(std::abs(L.determinant()), -0.25);
    CHECK(mat4_diff_up_to_sign(vm.A, L) <= 1e-10);
  }
}

TEST_CASE("kernel of the covering: scalar and pseudoscalar versors act trivially") {
  // (x,x)(x,-x) pairs over an orthonormal triple expand to a multiple of
  // the pseudoscalar; two equal factors expand to a scalar.
  std::vector<Vector33> fs;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Unit(i);
    fs.emplace_back(e, e);
    fs.emplace_back(e, -e);
  }
  PinSpElement P = PinSpElement::from_factors(0, fs);
  CHECK(norm(P.expanded - grade_project(P.expanded, 6)) <= 1e-12);
  CHECK((adjoint_mat6(P) - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(P).A, Mat4::Identity()) <= 1e-12);

  Vector33 v(Vec3::UnitY(), Vec3::UnitY());
  PinSpElement S = PinSpElement::from_factors(0, {v, v});
  CHECK((adjoint_mat6(S) - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(S).A, Mat4::Identity()) <= 1e-12);
}

TEST_CASE("pi rotation: canonical examples and lambda independence") {
  // axis through origin along e1
  PinSpElement U = make_pi_rotation(Vec3::UnitX(), Vec3::Zero(), 1.0);
  Mat4 want = Mat4::Identity();
  want(2, 2) = want(3, 3) = -1.0;
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(U).A, want) <= 1e-10);
  CHECK_FALSE(versor_to_mat4(U).polarity);

  // axis through e3 along e1
  PinSpElement V = make_pi_rotation(Vec3::UnitX(), Vec3::UnitZ(), 1.0);
  Mat4 w2 = Mat4::Identity();
  w2(2, 2) = w2(3, 3) = -1.0;
  w2(3, 0) = 2.0;
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(V).A, w2) <= 1e-10);

  Rng rng(38);
  for (int k = 0; k < 40; ++k) {
    Vec3 x = lgtest::rand_vec3(rng);
    Vec3 y0 = lgtest::rand_vec3(rng);
    Vec3 y = y0 - y0.dot(x) / x.squaredNorm() * x;
    double l1 = 0.3 + std::abs(lgtest::rand_real(rng));
    double l2 = 0.3 + std::abs(lgtest::rand_real(rng));
    Mat4 A1 = versor_to_mat4(make_pi_rotation(x, y, l1)).A;
    Mat4 A2 = versor_to_mat4(make_pi_rotation(x, y, -l2)).A;
    CHECK(mat4_diff_up_to_sign(A1, A2) <= 1e-9);
    // matches the rigid motion rotating by pi about the axis through y
    Mat3 R = Eigen::AngleAxisd(M_PI, x.normalized()).toRotationMatrix();
    RigidMotion M{R, (Mat3::Identity() - R) * y};
    CHECK(mat4_diff_up_to_sign(A1, versor_to_mat4(make_rigid_versor(M)).A) <=
          1e-8);
  }
  CHECK_THROWS_AS(make_pi_rotation(Vec3::Zero(), Vec3::Zero(), 1.0), Error);
  CHECK_THROWS_AS(make_pi_rotation(Vec3::UnitX(), Vec3::UnitX(), 1.0), Error);
  CHECK_THROWS_AS(make_pi_rotation(Vec3::UnitX(), Vec3::UnitY(), 0.0), Error);
}

TEST_CASE("translation versors realize (1,0; t,I) in both options") {
  Rng rng(39);
  for (int k = 0; k < 60; ++k) {
    Vec3 t = lgtest::rand_vec3(rng);
    for (int opt : {1, 2}) {
      PinSpElement U = make_translation_versor(t, opt);
      VersorMat4 vm = versor_to_mat4(U);
      Mat4 want = Mat4::Identity();
      want.block<3, 1>(1, 0) = t;
      want *= std::pow(std::abs(want.determinant()), -0.25);
      CHECK_FALSE(vm.polarity);
      CHECK(mat4_diff_up_to_sign(vm.A, want) <= 1e-9);
    }
  }
  // zero translation degenerates to a scalar versor
  PinSpElement Z = make_translation_versor(Vec3::Zero());
  CHECK((adjoint_mat6(Z) - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("rigid versors realize general rigid motions") {
  Rng rng(40);
  for (int k = 0; k < 100; ++k) {
    RigidMotion M{lgtest::rand_rotation(rng), lgtest::rand_vec3(rng)};
    Mat4 want = mat4_of_rigid(M);
    want *= std::pow(std::abs(want.determinant()), -0.25);
    for (RigidFactorization mode :
         {RigidFactorization::Opt1, RigidFactorization::Opt2}) {
      PinSpElement U = make_rigid_versor(M, mode);
      VersorMat4 vm = versor_to_mat4(U);
      CHECK_FALSE(vm.polarity);
      CHECK(mat4_diff_up_to_sign(vm.A, want) <= 1e-8);
    }
  }
  // composition of rigid versors tracks composition of motions
  RigidMotion M1{lgtest::rand_rotation(rng), lgtest::rand_vec3(rng)};
  RigidMotion M2{lgtest::rand_rotation(rng), lgtest::rand_vec3(rng)};
  RigidMotion M12{M1.R * M2.R, M1.t + M1.R * M2.t};
  PinSpElement C = compose(make_rigid_versor(M1), make_rigid_versor(M2));
  Mat4 want = mat4_of_rigid(M12);
  want *= std::pow(std::abs(want.determinant()), -0.25);
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(C).A, want) <= 1e-8);
  // identity rotation falls back to the translation factors
  RigidMotion T{Mat3::Identity(), Vec3(0.5, -1.0, 2.0)};
  Mat4 wt = mat4_of_rigid(T);
  wt *= std::pow(std::abs(wt.determinant()), -0.25);
  CHECK(mat4_diff_up_to_sign(versor_to_mat4(make_rigid_versor(T)).A, wt) <=
        1e-9);
  CHECK_THROWS_AS(rigid_params(RigidMotion{2.0 * Mat3::Identity(), Vec3::Zero()}),
                  Error);
}

TEST_CASE("plane reflection versor") {
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    Vec3 n = lgtest::rand_vec3(rng).normalized();
    double d = lgtest::rand_real(rng);
    PinSpElement U = make_plane_reflection(n, d);
    CHECK(U.tflag == 1);
    Mat4 want = Mat4::Identity();
    want.block<3, 3>(1, 1) = Mat3::Identity() - 2.0 * n * n.transpose();
    want.block<3, 1>(1, 0) = -2.0 * d * n;
    want *= std::pow(std::abs(want.determinant()), -0.25);
    VersorMat4 vm = versor_to_mat4(U);
    CHECK_FALSE(vm.polarity);
    CHECK(mat4_diff_up_to_sign(vm.A, want) <= 1e-9);
    // involution
    Mat6 sq = adjoint_mat6(compose(U, U));
    CHECK((sq - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK(make_plane_reflection(Vec3::UnitZ(), 0.0).factors.size() == 2);
  CHECK_THROWS_AS(make_plane_reflection(2.0 * Vec3::UnitX(), 1.0), Error);
}

TEST_CASE("two-reflection normal forms: family classification") {
  Rng rng(42);
  auto check_family = [&](const Vector33& U, const Vector33& V, int family) {
    NormalForm nf = two_reflection_normal_form(U, V);
    CHECK(nf.family == family);
    // the normal form is conjugate to the induced matrix: compare
    // characteristic polynomials up to the projective sign
    Mat4 M = versor_to_mat4(PinSpElement::from_factors(0, {U, V})).A;
    Eigen::Vector4d pm = char_poly(M), pn = char_poly(nf.N);
    Eigen::Vector4d pm2 = char_poly((-M).eval());
    double d = std::min((pm - pn).cwiseAbs().maxCoeff(),
                        (pm2 - pn).cwiseAbs().maxCoeff());
    CHECK(d <= 1e-7);
  };

  for (int k = 0; k < 40; ++k) {
    Vec3 a = lgtest::rand_vec3(rng), b = lgtest::rand_vec3(rng);
    if (a.cross(b).norm() < 0.1) continue;
    check_family(Vector33(a, a), Vector33(b, b), 1);       // elliptic plane
    check_family(Vector33(a, -a), Vector33(b, -b), 2);     // anti-elliptic
  }
  // degenerate planes: invertible u plus an orthogonal null direction
  check_family(Vector33(Vec3::UnitX(), Vec3::UnitX()),
               Vector33(Vec3::UnitX() + Vec3::UnitY(), Vec3::UnitX()), 3);
  check_family(Vector33(Vec3::UnitX(), -Vec3::UnitX()),
               Vector33(Vec3::UnitX() + Vec3::UnitY(), -Vec3::UnitX()), 4);

  // hyperbolic planes: families 5 and 6
  double a5 = 2.0, b5 = 1.0;  // diag(a+b, a+b, a-b, a-b), same signs
  NormalForm f5 = two_reflection_normal_form(
      Vector33((a5 + b5) * Vec3::UnitX(), (a5 - b5) * Vec3::UnitX()),
      Vector33(Vec3::UnitX(), Vec3::UnitX()));
  CHECK(f5.family == 5);
  CHECK(f5.lambda == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  check_family(Vector33((a5 + b5) * Vec3::UnitX(), (a5 - b5) * Vec3::UnitX()),
               Vector33(Vec3::UnitX(), Vec3::UnitX()), 5);
  double a6 = 1.0, b6 = 2.0;  // diag(a+b, a+b, a-b, a-b), mixed signs
  check_family(Vector33((a6 + b6) * Vec3::UnitX(), (a6 - b6) * Vec3::UnitX()),
               Vector33(Vec3::UnitX(), Vec3::UnitX()), 6);

  CHECK_THROWS_AS(two_reflection_normal_form(
                      Vector33(Vec3::UnitX(), Vec3::UnitX()),
                      Vector33(2.0 * Vec3::UnitX(), 2.0 * Vec3::UnitX())),
                  Error);
  CHECK_THROWS_AS(two_reflection_normal_form(
                      Vector33(Vec3::UnitX(), Vec3::Zero()),
                      Vector33(Vec3::UnitY(), Vec3::UnitY())),
                  Error);
}

TEST_CASE("try_compress: coplanar 4-factor versors reduce to 2 factors") {
  Rng rng(43);
  int compressed = 0;
  for (int k = 0; k < 60; ++k) {
    Vector33 A = lgtest::rand_invertible(rng);
    Vector33 B = lgtest::rand_invertible(rng);
    std::vector<Vector33> fs;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      Vector33 f = A * lgtest::rand_real(rng) + B * lgtest::rand_real(rng);
      if (!f.invertible(1e-3)) ok = false;
      fs.push_back(f);
    }
    if (!ok) continue;
    PinSpElement U = PinSpElement::from_factors(0, fs);
    auto red = try_compress(U);
    REQUIRE(red.has_value());
    ++compressed;
    CHECK(red->factors.size() == 2);
    CHECK(max_coeff_diff(red->expanded, U.expanded) <=
          1e-7 * std::max(1.0, norm(U.expanded)));
    CHECK((adjoint_mat6(*red) - adjoint_mat6(U)).cwiseAbs().maxCoeff() <=
          1e-7);
  }
  CHECK(compressed >= 40);
}

TEST_CASE("try_compress: scalar case and generic failure") {
  Rng rng(44);
  Vector33 v = lgtest::rand_invertible(rng);
  Vector33 w = lgtest::rand_invertible(rng);
  PinSpElement S =
      PinSpElement::from_factors(0, {v, v * 0.7, w, w * -1.3});
  CHECK(norm(grade_project(S.expanded, 2)) <= 1e-9 * norm(S.expanded));
  auto red = try_compress(S);
  REQUIRE(red.has_value());
  CHECK(max_coeff_diff(red->expanded, S.expanded) <=
        1e-8 * std::max(1.0, norm(S.expanded)));

  int failed = 0;
  for (int k = 0; k < 20; ++k) {
    PinSpElement G = rand_versor(rng, 4, 0);
    if (norm(grade_project(G.expanded, 4)) < 1e-6) continue;
    if (!try_compress(G)) ++failed;
  }
  CHECK(failed >= 15);
}

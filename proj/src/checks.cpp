#include "lg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "lg/gc4.hpp"
#include "lg/multivector.hpp"
#include "lg/plucker.hpp"
#include "lg/screw.hpp"
#include "lg/versor.hpp"

namespace lg::checks {
namespace {

using Rng = std::mt19937_64;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double rand_real(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 rand_vec3(Rng& rng) {
  return Vec3(rand_real(rng), rand_real(rng), rand_real(rng));
}

Vec4 rand_vec4(Rng& rng) {
  return Vec4(rand_real(rng), rand_real(rng), rand_real(rng), rand_real(rng));
}

Vector33 rand_vector33(Rng& rng) {
  return Vector33(rand_vec3(rng), rand_vec3(rng));
}

Multivector rand_mv(Rng& rng) {
  Multivector m;
  for (int i = 0; i < 64; ++i) m.c[i] = rand_real(rng);
  return m;
}

Mat4 rand_sl4(Rng& rng) {
  Mat4 m;
  do {
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = rand_real(rng);
  } while (std::abs(m.determinant()) < 0.05);
  m /= std::pow(std::abs(m.determinant()), 0.25);
  if (m.determinant() < 0.0) m.col(0) = (-m.col(0)).eval();
  return m;
}

Mat3 rand_rotation(Rng& rng) {
  Eigen::Quaterniond q(rand_real(rng), rand_real(rng), rand_real(rng),
                       rand_real(rng));
  while (q.norm() < 1e-3)
    q = Eigen::Quaterniond(rand_real(rng), rand_real(rng), rand_real(rng),
                           rand_real(rng));
  q.normalize();
  return q.toRotationMatrix();
}

double mat4_diff_up_to_sign(const Mat4& a, const Mat4& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

// Unit-normalized multivector with a deterministic overall sign.
Multivector normed(const Multivector& m) {
  Multivector u = m * (1.0 / norm(m));
  for (int i = 0; i < 64; ++i) {
    if (std::abs(u.c[i]) > 1e-3) {
      if (u.c[i] < 0.0) u = u * -1.0;
      break;
    }
  }
  return u;
}

double mv_diff_up_to_sign(const Multivector& a, const Multivector& b) {
  return std::min(max_coeff_diff(a, b), max_coeff_diff(a, b * -1.0));
}

// Deterministic sweep: fn(rng, i) -> error for sample i; the rng stream is
// a pure function of (seed, property name, i), so results do not depend on
// the number of threads.
PropertyResult sweep(const std::string& name, std::uint64_t seed, int n,
                     double tol,
                     const std::function<double(Rng&, int)>& fn) {
  std::uint64_t base = seed;
  for (char ch : name) base = splitmix(base ^ static_cast<std::uint64_t>(ch));
  double worst = 0.0;
  std::int64_t worst_i = -1;
#pragma omp parallel
  {
    double local = -1.0;
    std::int64_t local_i = -1;
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      Rng rng(splitmix(base ^ static_cast<std::uint64_t>(i)));
      double e = fn(rng, i);
      if (e > local) {
        local = e;
        local_i = i;
      }
    }
#pragma omp critical
    {
      if (local > worst || worst_i < 0) {
        worst = std::max(local, 0.0);
        worst_i = local_i;
      }
    }
  }
  PropertyResult r;
  r.name = name;
  r.samples = n;
  r.max_error = worst;
  r.tol = tol;
  r.worst_sample = worst_i;
  r.pass = worst <= tol;
  return r;
}

// Suite bodies ---------------------------------------------------------------

SuiteResult suite_cl33(std::uint64_t seed, double ts) {
  SuiteResult s{"cl33", {}};
  s.properties.push_back(sweep(
      "geometric-associativity", seed, 500, 1e-10 * ts, [](Rng& rng, int) {
        Multivector a = rand_mv(rng), b = rand_mv(rng), c = rand_mv(rng);
        Multivector lhs = (a * b) * c, rhs = a * (b * c);
        return max_coeff_diff(lhs, rhs) / (1.0 + norm(lhs));
      }));
  s.properties.push_back(sweep(
      "witt-metric", seed, 1000, 1e-12 * ts, [](Rng& rng, int) {
        Vector33 u = rand_vector33(rng), v = rand_vector33(rng);
        Multivector lhs = u.mv() * v.mv() + v.mv() * u.mv();
        return max_coeff_diff(lhs, Multivector::scalar(2.0 * u.dot(v)));
      }));
  s.properties.push_back(sweep(
      "k2-identities", seed, 1000, 1e-12 * ts, [](Rng& rng, int) {
        double e = max_coeff_diff(
            K2() * K2(), Multivector::scalar(3.0) - 2.0 * (K2() * I33()));
        Vector33 u = rand_vector33(rng);
        e = std::max(e, max_coeff_diff(
                            K2() * u.mv() * K2(),
                            u.mv() + 2.0 * (I33() * left_contraction(
                                                        u.mv(), K2()))));
        e = std::max(e, max_coeff_diff(left_contraction(u.mv(), K2()),
                                       Vector33(-u.x, u.y).mv()));
        return e;
      }));
  s.properties.push_back(sweep(
      "reverse-antiautomorphism", seed, 300, 1e-10 * ts, [](Rng& rng, int) {
        Multivector a = rand_mv(rng), b = rand_mv(rng);
        return max_coeff_diff(reverse(a * b), reverse(b) * reverse(a)) /
               (1.0 + norm(a) * norm(b));
      }));
  return s;
}

SuiteResult suite_gc4(std::uint64_t seed, double ts) {
  SuiteResult s{"gc4", {}};
  s.properties.push_back(sweep(
      "line-nullity", seed, 500, 1e-12 * ts, [](Rng& rng, int) {
        HomPoint a(rand_real(rng), rand_vec3(rng));
        HomPoint b(rand_real(rng), rand_vec3(rng));
        if (a.v4().norm() < 0.2 || b.v4().norm() < 0.2 ||
            (a.v4() - b.v4()).norm() < 0.2)
          return 0.0;
        Line33 l = plucker_line(a, b);
        return std::abs(l.square());
      }));
  s.properties.push_back(sweep(
      "concurrent-lines-meet", seed, 500, 1e-12 * ts, [](Rng& rng, int) {
        HomPoint x(rand_real(rng), rand_vec3(rng));
        HomPoint a(rand_real(rng), rand_vec3(rng));
        HomPoint b(rand_real(rng), rand_vec3(rng));
        if (x.v4().norm() < 0.2 || (a.v4() - x.v4()).norm() < 0.2 ||
            (b.v4() - x.v4()).norm() < 0.2)
          return 0.0;
        return std::abs(plucker_line(x, a).dot(plucker_line(x, b)));
      }));
  s.properties.push_back(sweep(
      "meet-incidence", seed, 500, 1e-12 * ts, [](Rng& rng, int) {
        CoPlane p(rand_real(rng), rand_vec3(rng));
        CoPlane q(rand_real(rng), rand_vec3(rng));
        if (p.v4().norm() < 0.2 || q.v4().norm() < 0.2 ||
            (p.v4() - q.v4()).norm() < 0.2)
          return 0.0;
        Line33 l = meet_planes(p, q);
        // The meet line lies on both planes: pairing with each plane's
        // pencil of lines vanishes.
        CoPlane r(rand_real(rng), rand_vec3(rng));
        double e = std::abs(l.dot(meet_planes(p, r)));
        return std::max(e, std::abs(l.dot(meet_planes(q, r))));
      }));
  s.properties.push_back(sweep(
      "bracket4-determinant", seed, 500, 1e-12 * ts, [](Rng& rng, int) {
        Vec4 a = rand_vec4(rng), b = rand_vec4(rng), c = rand_vec4(rng),
             d = rand_vec4(rng);
        Mat4 m;
        m << a, b, c, d;
        return std::abs(bracket4(HomPoint::from_v4(a), HomPoint::from_v4(b),
                                 HomPoint::from_v4(c), HomPoint::from_v4(d)) -
                        m.determinant());
      }));
  return s;
}

SuiteResult suite_plucker(std::uint64_t seed, double ts) {
  SuiteResult s{"plucker", {}};
  s.properties.push_back(sweep(
      "lift2-homomorphism", seed, 200, 1e-8 * ts, [](Rng& rng, int) {
        Mat4 a = rand_sl4(rng), b = rand_sl4(rng);
        double e = (lift2(a * b) - lift2(a) * lift2(b)).norm() /
                   (1.0 + lift2(a * b).norm());
        e = std::max(e, (dual_lift2((a.inverse().transpose() * b).eval()) -
                         lift2(a) * dual_lift2(b))
                                .norm() /
                            (1.0 + lift2(b).norm()));
        e = std::max(e, (dual_lift2((a * b).eval()) -
                         dual_lift2(a) * lift2(b))
                                .norm() /
                            (1.0 + lift2(b).norm()));
        e = std::max(e, (lift2((a.inverse().transpose() * b).eval()) -
                         dual_lift2(a) * dual_lift2(b))
                                .norm() /
                            (1.0 + lift2(b).norm()));
        return e;
      }));
  s.properties.push_back(sweep(
      "determinant-laws", seed, 200, 1e-8 * ts, [](Rng& rng, int) {
        Mat4 a = rand_sl4(rng);
        double da = a.determinant();
        double e = std::abs(lift2(a).determinant() - da * da * da);
        return std::max(
            e, std::abs(dual_lift2(a).determinant() + da * da * da));
      }));
  s.properties.push_back(sweep(
      "representation-covariance", seed, 200, 1e-8 * ts, [](Rng& rng, int) {
        Mat4 a = rand_sl4(rng);
        HomPoint x(rand_real(rng), rand_vec3(rng));
        if (x.v4().norm() < 0.2) return 0.0;
        Multivector lhs =
            rep_point(HomPoint::from_v4(a * x.v4())).t * a.determinant();
        Multivector rhs = lift3_apply(lift2(a), rep_point(x)).t;
        double e = max_coeff_diff(lhs, rhs) / (1.0 + norm(rhs));
        Multivector dl =
            rep_plane(CoPlane::from_v4(a * x.v4())).t * a.determinant();
        Multivector dr = lift3_apply(dual_lift2(a), rep_point(x)).t;
        return std::max(e, max_coeff_diff(dl, dr) / (1.0 + norm(dr)));
      }));
  s.properties.push_back(sweep(
      "point-plane-pairing", seed, 500, 1e-9 * ts, [](Rng& rng, int) {
        Vec4 x = rand_vec4(rng), p = rand_vec4(rng);
        if (x.norm() < 0.2 || p.norm() < 0.2) return 0.0;
        double bracket = x.dot(p);
        double pair = scalar_product(rep_point(HomPoint::from_v4(x)).t,
                                     rep_plane(CoPlane::from_v4(p)).t);
        return std::abs(pair + bracket * bracket);
      }));
  s.properties.push_back(sweep(
      "recover-mat4-roundtrip", seed, 300, 1e-7 * ts, [](Rng& rng, int) {
        Mat4 a = rand_sl4(rng);
        Mat4Recovery r = recover_mat4(lift2(a));
        if (r.polarity) return 1.0;
        return mat4_diff_up_to_sign(r.A, a);
      }));
  s.properties.push_back(sweep(
      "lift3-parallel-vs-serial", seed, 100, 1e-12 * ts, [](Rng& rng, int) {
        Mat6 b = lift2(rand_sl4(rng));
        Eigen::Matrix<double, 20, 20> d = lift3(b) - lift3_serial(b);
        return d.cwiseAbs().maxCoeff() / (1.0 + lift3(b).cwiseAbs().maxCoeff());
      }));
  return s;
}

SuiteResult suite_versor(std::uint64_t seed, double ts) {
  SuiteResult s{"versor", {}};
  s.properties.push_back(sweep(
      "adjoint-isometry", seed, 200, 1e-10 * ts, [](Rng& rng, int) {
        std::vector<Vector33> fs;
        for (int k = 0; k < 3; ++k) {
          Vector33 v = rand_vector33(rng);
          if (std::abs(v.square()) < 0.1) return 0.0;
          fs.push_back(v);
        }
        PinSpElement u = PinSpElement::from_factors(0, fs);
        Vector33 a = rand_vector33(rng), b = rand_vector33(rng);
        Vector33 ia = adjoint(u, a), ib = adjoint(u, b);
        return std::abs(ia.dot(ib) - a.dot(b)) / (1.0 + std::abs(a.dot(b)));
      }));
  s.properties.push_back(sweep(
      "constructors-match-mat4", seed, 100, 1e-8 * ts, [](Rng& rng, int) {
        double e = 0.0;
        // pi rotation about a random axis
        Vec3 x = rand_vec3(rng);
        if (x.norm() < 0.2) return 0.0;
        Vec3 y0 = rand_vec3(rng);
        Vec3 y = y0 - y0.dot(x) / x.squaredNorm() * x;
        Mat3 R = Eigen::AngleAxisd(M_PI, x.normalized()).toRotationMatrix();
        Mat4 want = mat4_of_rigid(RigidMotion{R, (Mat3::Identity() - R) * y});
        want *= std::pow(std::abs(want.determinant()), -0.25);
        e = std::max(e, mat4_diff_up_to_sign(
                            versor_to_mat4(make_pi_rotation(x, y, 1.0)).A,
                            want));
        // general rigid motion, both factor choices
        RigidMotion M{rand_rotation(rng), rand_vec3(rng)};
        Mat4 wm = mat4_of_rigid(M);
        wm *= std::pow(std::abs(wm.determinant()), -0.25);
        for (RigidFactorization mode :
             {RigidFactorization::Opt1, RigidFactorization::Opt2})
          e = std::max(e, mat4_diff_up_to_sign(
                              versor_to_mat4(make_rigid_versor(M, mode)).A,
                              wm));
        // translation, both options
        Vec3 t = rand_vec3(rng);
        Mat4 wt = Mat4::Identity();
        wt.block<3, 1>(1, 0) = t;
        wt *= std::pow(std::abs(wt.determinant()), -0.25);
        for (int opt : {1, 2})
          e = std::max(e, mat4_diff_up_to_sign(
                              versor_to_mat4(make_translation_versor(t, opt)).A,
                              wt));
        // plane reflection
        Vec3 n = rand_vec3(rng);
        if (n.norm() < 0.2) return e;
        n.normalize();
        double d = rand_real(rng);
        Mat4 wr = Mat4::Identity();
        wr.block<3, 3>(1, 1) = Mat3::Identity() - 2.0 * n * n.transpose();
        wr.block<3, 1>(1, 0) = -2.0 * d * n;
        wr *= std::pow(std::abs(wr.determinant()), -0.25);
        return std::max(
            e, mat4_diff_up_to_sign(
                   versor_to_mat4(make_plane_reflection(n, d)).A, wr));
      }));
  s.properties.push_back(sweep(
      "exponential-agreement", seed, 200, 1e-9 * ts, [](Rng& rng, int) {
        RigidMotion M{rand_rotation(rng), rand_vec3(rng)};
        Multivector a = normed(make_rigid_versor(M).expanded);
        Multivector b = normed(exp_bivector(se3_bivector(M)));
        double e = mv_diff_up_to_sign(a, b);
        Vec3 t = rand_vec3(rng);
        if (t.norm() > 1e-6)
          e = std::max(e, mv_diff_up_to_sign(
                              normed(make_translation_versor(t).expanded),
                              normed(exp_bivector(bv_EpEp(t) * -0.5))));
        return e;
      }));
  s.properties.push_back(sweep(
      "covering-kernel", seed, 50, 1e-12 * ts, [](Rng& rng, int) {
        // scalar and pseudoscalar versors act as the identity
        std::vector<Vector33> fs;
        for (int i = 0; i < 3; ++i) {
          Vec3 e = Vec3::Unit(i);
          fs.emplace_back(e, e);
          fs.emplace_back(e, -e);
        }
        PinSpElement P = PinSpElement::from_factors(0, fs);
        Vector33 x = rand_vector33(rng);
        double e = (adjoint(P, x).v6() - x.v6()).norm();
        Vector33 v(Vec3::UnitY(), Vec3::UnitY());
        PinSpElement S = PinSpElement::from_factors(0, {v, v});
        return std::max(e, (adjoint(S, x).v6() - x.v6()).norm());
      }));
  return s;
}

SuiteResult suite_screw(std::uint64_t seed, double ts) {
  SuiteResult s{"screw", {}};
  s.properties.push_back(sweep(
      "cross-oracles", seed, 500, 1e-10 * ts, [](Rng& rng, int) {
        double e = 0.0;
        for (Algebra tag :
             {Algebra::se3, Algebra::so4, Algebra::so31, Algebra::so301,
              Algebra::so22, Algebra::so211, Algebra::gad}) {
          Screw a{rand_vec3(rng), rand_vec3(rng), tag};
          Screw b{rand_vec3(rng), rand_vec3(rng), tag};
          Screw c = algebra_cross(a, b);
          Multivector comm = bivector_comm(qp_lift(a), qp_lift(b));
          e = std::max(e, max_coeff_diff(comm, qp_lift(c)));
          if (tag != Algebra::gad) {
            Vector33 tv =
                trivector_cross(algebra_trivector(tag), a.vec(), b.vec());
            e = std::max(e, (tv.v6() - c.vec().v6()).norm());
          }
        }
        return e;
      }));
  s.properties.push_back(sweep(
      "superscrew-bracket", seed, 500, 1e-10 * ts, [](Rng& rng, int) {
        Mat4 a = rand_sl4(rng), b = rand_sl4(rng);
        a -= Mat4::Identity() * (a.trace() / 4.0);
        b -= Mat4::Identity() * (b.trace() / 4.0);
        Superscrew got =
            superscrew_bracket(superscrew_from_sl4(a), superscrew_from_sl4(b));
        Superscrew want = superscrew_from_sl4(((a * b - b * a) * 0.5).eval());
        double e = 0.0;
        for (int k = 0; k < 5; ++k)
          e = std::max(e, (got.x[k] - want.x[k]).norm());
        return e;
      }));
  s.properties.push_back(sweep(
      "virtual-work", seed, 300, 1e-10 * ts, [](Rng& rng, int) {
        Screw m{rand_vec3(rng), rand_vec3(rng), Algebra::se3};
        Wrench w{rand_vec3(rng), rand_vec3(rng)};
        double e = 0.0;
        for (double lam : {0.0, 1.0, -1.0, 2.0}) {
          double want =
              -2.0 * m.v.dot(w.q) - (1.0 + lam * lam) * m.t.dot(w.f);
          e = std::max(e, std::abs(virtual_work(m, w, lam) - want));
        }
        return e;
      }));
  s.properties.push_back(sweep(
      "common-perpendicular", seed, 300, 1e-10 * ts, [](Rng& rng, int) {
        Screw A{rand_vec3(rng), rand_vec3(rng), Algebra::se3};
        Screw B{rand_vec3(rng), rand_vec3(rng), Algebra::se3};
        if (A.v.norm() < 0.3 || B.v.norm() < 0.3) return 0.0;
        if (A.v.normalized().cross(B.v.normalized()).norm() < 0.3) return 0.0;
        Screw An{A.v / A.v.norm(), A.t / A.v.norm(), Algebra::se3};
        Screw Bn{B.v / B.v.norm(), B.t / B.v.norm(), Algebra::se3};
        CommonPerp c = common_perpendicular(A, B);
        Vec3 n = An.v.cross(Bn.v);
        Screw want{n, c.y.cross(n) + c.mu * n, Algebra::se3};
        Screw got = se3_cross(An, Bn);
        return (got.vec().v6() - want.vec().v6()).norm();
      }));
  return s;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.pass; });
}

std::vector<std::string> suite_names() {
  return {"cl33", "gc4", "plucker", "versor", "screw"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      double tol_scale) {
  if (name == "cl33") return suite_cl33(seed, tol_scale);
  if (name == "gc4") return suite_gc4(seed, tol_scale);
  if (name == "plucker") return suite_plucker(seed, tol_scale);
  if (name == "versor") return suite_versor(seed, tol_scale);
  if (name == "screw") return suite_screw(seed, tol_scale);
  fail("UnknownSuite", "run_suite: unknown suite " + name);
}

}  // namespace lg::checks

#include "lg/plucker.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lg {
namespace {

// Wedge of two R^4 vectors expressed as a screw pair (no degeneracy check;
// used for matrix columns where degenerate results are legitimate).
Vector33 wedge_cols(const Vec4& a, const Vec4& b) {
  Vec3 av = a.tail<3>(), bv = b.tail<3>();
  return Vector33(a[0] * bv - b[0] * av, av.cross(bv));
}

// Meet of two covectors (columns of a polarity matrix in the ce basis).
Vector33 meet_cols(const Vec4& a, const Vec4& b) {
  Vec3 an = a.tail<3>(), bn = b.tail<3>();
  return Vector33(an.cross(bn), a[0] * bn - b[0] * an);
}

// Basis 2-blades e_{ij} of Lambda^2(R^4) in Witt order:
// E1=e01, E2=e02, E3=e03, E1'=e23, E2'=e31, E3'=e12.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

}  // namespace

Trivector33::Trivector33(const Multivector& m) {
  for (uint32_t i = 0; i < 64; ++i)
    if (m.c[i] != 0.0 && grade_of(i) != 3)
      fail("NotTrivector", "Trivector33: multivector has non-grade-3 part");
  t = m;
}

const std::array<uint32_t, 20>& grade3_blades() {
  static const std::array<uint32_t, 20> blades = [] {
    std::array<uint32_t, 20> b{};
    int n = 0;
    for (uint32_t bits = 0; bits < 64; ++bits)
      if (grade_of(bits) == 3) b[n++] = bits;
    return b;
  }();
  return blades;
}

Eigen::Matrix<double, 20, 1> trivector_coords(const Trivector33& T) {
  Eigen::Matrix<double, 20, 1> v;
  const auto& blades = grade3_blades();
  for (int i = 0; i < 20; ++i) v[i] = T.t.c[blades[i]];
  return v;
}

Trivector33 trivector_from_coords(const Eigen::Matrix<double, 20, 1>& v) {
  Trivector33 T;
  const auto& blades = grade3_blades();
  for (int i = 0; i < 20; ++i) T.t.c[blades[i]] = v[i];
  return T;
}

Trivector33 normalize_null3(const Trivector33& T) {
  double maxc = 0.0;
  for (uint32_t b : grade3_blades()) maxc = std::max(maxc, std::abs(T.t.c[b]));
  if (maxc == 0.0) return T;
  Trivector33 R = T * (1.0 / maxc);
  for (uint32_t b : grade3_blades()) {
    if (std::abs(R.t.c[b]) > 1e-9) {
      if (R.t.c[b] < 0) R = R * -1.0;
      break;
    }
  }
  return R;
}

Trivector33 rep_point(const HomPoint& X) {
  if (X.v4().norm() == 0.0) fail("ZeroInput", "rep_point: zero point");
  Multivector v = Vector33(X.x, Vec3::Zero()).mv();  // e0 ^ x as E(x)
  Multivector F = outer_product(v, inner_product(v, J3())) -
                  X.x0 * outer_product(v, K2()) + (X.x0 * X.x0) * I3();
  return Trivector33(grade_project(F, 3));
}

Trivector33 rep_plane(const CoPlane& P) {
  if (P.v4().norm() == 0.0) fail("ZeroInput", "rep_plane: zero plane");
  Multivector v = Vector33(Vec3::Zero(), P.n).mv();  // ce0 v Pi = E'(n)
  Multivector F = outer_product(v, inner_product(v, I3())) +
                  P.d * outer_product(v, K2()) + (P.d * P.d) * J3();
  return Trivector33(grade_project(F, 3));
}

NullKind classify_null3(const Trivector33& T, double tol) {
  double n = norm(T.t);
  if (n == 0.0) fail("NotNull3Space", "classify_null3: zero trivector");
  Multivector TI = inner_product(T.t, I33());
  double plus = norm(TI - T.t), minus = norm(TI + T.t);
  if (plus <= tol * n) return NullKind::Point;
  if (minus <= tol * n) return NullKind::Plane;
  fail("NotNull3Space", "classify_null3: T.I33 is not +-T");
}

namespace {

// Shared recovery: T ~ s * F(X).  The pairing F(X).F''(Pi) = -[X Pi]^2
// against the dual basis gives the Gram matrix M = s X X^T; X is read off
// the best pivot column.  `dual` swaps the roles of rep_point/rep_plane.
Vec4 recover_coords(const Trivector33& T, bool dual, const char* errcode) {
  Mat4 M;
  auto pair_with = [&](const Vec4& c) {
    if (dual) {
      // recovering a plane: pair with points e_j
      Trivector33 F = rep_point(HomPoint::from_v4(c));
      return -scalar_product(F.t, T.t);
    }
    Trivector33 F = rep_plane(CoPlane::from_v4(c));
    return -scalar_product(T.t, F.t);
  };
  Vec4 diag;
  for (int j = 0; j < 4; ++j) diag[j] = pair_with(Vec4::Unit(j));
  for (int i = 0; i < 4; ++i) {
    M(i, i) = diag[i];
    for (int j = i + 1; j < 4; ++j) {
      double mixed = pair_with(Vec4::Unit(i) + Vec4::Unit(j));
      M(i, j) = M(j, i) = 0.5 * (mixed - diag[i] - diag[j]);
    }
  }
  int piv = 0;
  M.diagonal().cwiseAbs().maxCoeff(&piv);
  double pivval = M(piv, piv);
  if (std::abs(pivval) <= 1e-12 * std::max(1.0, norm(T.t)))
    fail(errcode, "recover: degenerate pairing Gram matrix");
  Vec4 X = M.col(piv) / std::sqrt(std::abs(pivval));
  X.normalize();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(X[i]) > 1e-9) {
      if (X[i] < 0) X = -X;
      break;
    }
  }
  return X;
}

bool proportional(const Trivector33& A, const Trivector33& B, double tol) {
  Trivector33 a = normalize_null3(A), b = normalize_null3(B);
  return max_coeff_diff(a.t, b.t) <= tol;
}

}  // namespace

HomPoint recover_point(const Trivector33& T) {
  if (classify_null3(T) != NullKind::Point)
    fail("NotAPoint", "recover_point: trivector classifies as a plane");
  Vec4 X = recover_coords(T, /*dual=*/false, "NotAPoint");
  HomPoint p = HomPoint::from_v4(X);
  if (!proportional(rep_point(p), T, 1e-6))
    fail("NotAPoint", "recover_point: round trip mismatch");
  return p;
}

CoPlane recover_plane(const Trivector33& T) {
  if (classify_null3(T) != NullKind::Plane)
    fail("NotAPlane", "recover_plane: trivector classifies as a point");
  Vec4 P = recover_coords(T, /*dual=*/true, "NotAPlane");
  CoPlane pl = CoPlane::from_v4(P);
  if (!proportional(rep_plane(pl), T, 1e-6))
    fail("NotAPlane", "recover_plane: round trip mismatch");
  return pl;
}

const Mat6& Jmat6() {
  static const Mat6 J = [] {
    Mat6 m = Mat6::Zero();
    m.block<3, 3>(0, 3) = Mat3::Identity();
    m.block<3, 3>(3, 0) = Mat3::Identity();
    return m;
  }();
  return J;
}

const Mat6& Tmat6() {
  static const Mat6 T = [] {
    Mat6 m = Mat6::Identity();
    m.block<3, 3>(0, 0) = -Mat3::Identity();
    return m;
  }();
  return T;
}

Mat6 lift2(const Mat4& A) {
  if (std::abs(A.determinant()) <= 1e-12 * std::pow(std::max(A.norm(), 1e-30), 4))
    fail("Singular", "lift2: singular matrix");
  Mat6 B;
  for (int c = 0; c < 6; ++c)
    B.col(c) = wedge_cols(A.col(kPairs[c][0]), A.col(kPairs[c][1])).v6();
  return B;
}

Mat6 dual_lift2(const Mat4& D) {
  if (std::abs(D.determinant()) <= 1e-12 * std::pow(std::max(D.norm(), 1e-30), 4))
    fail("Singular", "dual_lift2: singular matrix");
  Mat6 B;
  for (int c = 0; c < 6; ++c)
    B.col(c) = meet_cols(D.col(kPairs[c][0]), D.col(kPairs[c][1])).v6();
  return B;
}

namespace {

Eigen::Matrix<double, 20, 20> lift3_impl(const Mat6& B, bool parallel) {
  Eigen::Matrix<double, 20, 20> M;
  const auto& blades = grade3_blades();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int c = 0; c < 20; ++c) {
    uint32_t bits = blades[c];
    Multivector w = Multivector::scalar(1.0);
    for (int g = 0; g < 6; ++g)
      if (bits & (1u << g))
        w = outer_product(w, Vector33::from_v6(B.col(g)).mv());
    for (int r = 0; r < 20; ++r) M(r, c) = w.c[blades[r]];
  }
  (void)parallel;
  return M;
}

}  // namespace

Eigen::Matrix<double, 20, 20> lift3(const Mat6& B) { return lift3_impl(B, true); }
Eigen::Matrix<double, 20, 20> lift3_serial(const Mat6& B) {
  return lift3_impl(B, false);
}

Trivector33 lift3_apply(const Mat6& B, const Trivector33& T) {
  return Trivector33(apply_outermorphism(B, T.t));
}

// ---------------------------------------------------------------------------
// recover_mat4: the minor-based recovery of A from B ~ lift2(A), A in SL(4).
// Index conventions (1-based labels):
//   P(0)=123, P(1)=12'3', P(2)=23'1', P(3)=31'2'     (row/column triples)
//   Q(i)=j'k' for positive permutation ijk; Q(ij)=k'.
// Matrix indices: plain label i -> i-1, primed label i' -> i+2.
namespace {

constexpr int kP[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 5, 3}, {2, 3, 4}};

double minor3(const Mat6& B, const int (&rows)[3], const int (&cols)[3]) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = B(rows[r], cols[c]);
  return m.determinant();
}

int third_of(int p, int q) { return 6 - p - q; }        // labels in 1..3
int perm_sign(int p, int q) {                           // sign of (p,q,third)
  return ((q - p + 3) % 3 == 1) ? +1 : -1;              // (1,2),(2,3),(3,1) -> +
}
void qpair(int i, int out[2]) {                         // Q(i) as indices
  int j = (i % 3) + 1, k = (j % 3) + 1;                 // ijk positive perm
  out[0] = j + 2;
  out[1] = k + 2;
}

// a_{r1 c} * a_{r2 c}, any distinct rows r1,r2 in 0..3, column c in 0..3.
double col_product(const Mat6& B, int c, int r1, int r2) {
  if (r1 == 0 || r2 == 0) {
    int i = r1 + r2;                                    // the nonzero row label
    int j = (i % 3) + 1, k = (j % 3) + 1;
    int rows1[3] = {i - 1, j - 1, j + 2};               // i j j'
    int rows2[3] = {i - 1, k - 1, k + 2};               // i k k'
    return -0.5 * (minor3(B, rows1, kP[c]) + minor3(B, rows2, kP[c]));
  }
  int i = r1, j = r2, qi[2], qj[2];
  qpair(i, qi);
  qpair(j, qj);
  int rows1[3] = {i - 1, qj[0], qj[1]};                 // i Q(j)
  int rows2[3] = {qi[0], qi[1], j - 1};                 // Q(i) j
  return 0.5 * (minor3(B, rows1, kP[c]) + minor3(B, rows2, kP[c]));
}

// a_{r c1} * a_{r c2} (transpose of col_product).
double row_product(const Mat6& B, int r, int c1, int c2) {
  return col_product(B.transpose(), r, c1, c2);
}

// a_{0p} * a_{iq} for i,p,q in 1..3, p != q (refined cross formula).
double cross0_product(const Mat6& B, int p, int i, int q) {
  int j = (i % 3) + 1, k = (j % 3) + 1;
  int qp[2], qq[2];
  qpair(p, qp);
  qpair(q, qq);
  int rows1[3] = {i - 1, j - 1, j + 2};
  int rows2[3] = {i - 1, k - 1, k + 2};
  int colsA[3] = {p - 1, qq[0], qq[1]};                 // p Q(q)
  int colsB[3] = {qp[0], qp[1], q - 1};                 // Q(p) q
  // Average the jj'/kk' variants of (-B^{i..}_{pQ(q)} - B^{i..}_{Q(p)q}).
  double S = -0.5 * ((minor3(B, rows1, colsA) + minor3(B, rows1, colsB)) +
                     (minor3(B, rows2, colsA) + minor3(B, rows2, colsB)));
  double b = B(i - 1, third_of(p, q) + 2);              // b_{i Q(pq)}
  return 0.5 * (S + perm_sign(p, q) * b);
}

// a_{ip} * a_{jq} for distinct i,j and distinct p,q, all in 1..3.
double cross_product2(const Mat6& B, int i, int p, int j, int q) {
  int qi[2], qj[2], qp[2], qq[2];
  qpair(i, qi);
  qpair(j, qj);
  qpair(p, qp);
  qpair(q, qq);
  int rows1[3] = {i - 1, qj[0], qj[1]};                 // i Q(j)
  int rows2[3] = {qi[0], qi[1], j - 1};                 // Q(i) j
  int colsA[3] = {p - 1, qq[0], qq[1]};
  int colsB[3] = {qp[0], qp[1], q - 1};
  double S = 0.5 * ((minor3(B, rows1, colsA) + minor3(B, rows1, colsB)) +
                    (minor3(B, rows2, colsA) + minor3(B, rows2, colsB)));
  double b = B(third_of(i, j) + 2, third_of(p, q) + 2);  // b_{Q(ij) Q(pq)}
  return 0.5 * (S + perm_sign(i, j) * perm_sign(p, q) * b);
}

// 2x2 minor of A read from an entry of B:
// a_{r1c1} a_{r2c2} - a_{r1c2} a_{r2c1} for r1<r2, c1<c2 (0-based indices).
double minor2_from_b(const Mat6& B, int r1, int r2, int c1, int c2) {
  // b_{ij} = A^{0i}_{0j}, b_{i'j} = A^{pq}_{0j} ((i,p,q) positive), etc.;
  // a pair {u,v} with u,v >= 1 picks up the orientation sign of (u,v)
  // relative to the positive permutation completing the third label.
  int ra, rs, ca, cs;
  if (r1 == 0) {
    ra = r2 - 1;
    rs = +1;
  } else {
    ra = third_of(r1, r2) + 2;
    rs = perm_sign(r1, r2);
  }
  if (c1 == 0) {
    ca = c2 - 1;
    cs = +1;
  } else {
    ca = third_of(c1, c2) + 2;
    cs = perm_sign(c1, c2);
  }
  return rs * cs * B(ra, ca);
}

// Recover A in SL(4) from B ~ lift2(A) (orthogonal, det +1 branch).
Mat4 recover_sl4(const Mat6& B, double tol) {
  Mat4 sq, mag;
  double maxsq = 0.0, minsq = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int q = 0; q < 4; ++q) {
      sq(i, q) = minor3(B, kP[i], kP[q]);
      maxsq = std::max(maxsq, sq(i, q));
      minsq = std::min(minsq, sq(i, q));
    }
  if (minsq < -tol * std::max(1.0, maxsq))
    fail("BranchUnliftable",
         "recover_mat4: negative P-minors; B lies in a component with no "
         "4x4 pre-image");
  for (int i = 0; i < 4; ++i)
    for (int q = 0; q < 4; ++q) mag(i, q) = std::sqrt(std::max(sq(i, q), 0.0));

  double maxmag = mag.maxCoeff();
  Mat4 A = Mat4::Zero();
  bool done[4][4] = {};

  // Resolution order: descending magnitude.
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < 4; ++i)
    for (int q = 0; q < 4; ++q) order.push_back({i, q});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return mag(a.first, a.second) > mag(b.first, b.second);
  });

  int ar = order[0].first, ac = order[0].second;
  A(ar, ac) = mag(ar, ac);
  done[ar][ac] = true;

  // Product of entry (r,c) with resolved partner; false when no identity
  // links the pair yet.
  auto product_with = [&](int r, int c, int pr, int pc, double& out) {
    if (r == pr && c == pc) return false;
    if (c == pc) {
      out = col_product(B, c, r, pr);
      return true;
    }
    if (r == pr) {
      out = row_product(B, r, c, pc);
      return true;
    }
    if (c >= 1 && pc >= 1) {
      if (r == 0 && pr >= 1) {
        out = cross0_product(B, c, pr, pc);
        return true;
      }
      if (pr == 0 && r >= 1) {
        out = cross0_product(B, pc, r, c);
        return true;
      }
      if (r >= 1 && pr >= 1) {
        out = cross_product2(B, r, c, pr, pc);
        return true;
      }
    }
    // Fall back to the 2x2-minor identity when the complementary pair of
    // entries is already resolved.
    if (done[r][pc] && done[pr][c]) {
      int r1 = std::min(r, pr), r2 = std::max(r, pr);
      int c1 = std::min(c, pc), c2 = std::max(c, pc);
      double m = minor2_from_b(B, r1, r2, c1, c2);
      // m = a_{r1c1} a_{r2c2} - a_{r1c2} a_{r2c1}; our pair sits on the main
      // diagonal of the 2x2 submatrix when rows and columns are ordered the
      // same way, on the anti-diagonal otherwise.
      bool main_diag = (r < pr) == (c < pc);
      if (main_diag)
        out = m + A(r1, c2) * A(r2, c1);
      else
        out = A(r1, c1) * A(r2, c2) - m;
      return true;
    }
    return false;
  };

  for (int pass = 0; pass < 16; ++pass) {
    bool progress = false;
    for (auto [r, c] : order) {
      if (done[r][c]) continue;
      double bestval = 0.0, bestpartner = -1.0;
      for (int pr = 0; pr < 4; ++pr)
        for (int pc = 0; pc < 4; ++pc) {
          if (!done[pr][pc]) continue;
          double prod;
          if (!product_with(r, c, pr, pc, prod)) continue;
          double pm = std::abs(A(pr, pc));
          if (pm > bestpartner) {
            bestpartner = pm;
            bestval = prod / A(pr, pc);
          }
        }
      if (bestpartner < 0) continue;  // no link yet; try next pass
      if (bestpartner < 1e-3 * maxmag) {
        // Partner too small for a stable quotient: take the sign from the
        // quotient but the magnitude from the direct minor.
        A(r, c) = (bestval < 0 ? -1.0 : 1.0) * mag(r, c);
      } else {
        A(r, c) = bestval;
      }
      done[r][c] = true;
      progress = true;
    }
    bool all = true;
    for (int i = 0; i < 4; ++i)
      for (int q = 0; q < 4; ++q) all = all && done[i][q];
    if (all) break;
    if (!progress)
      fail("NotRegular", "recover_mat4: sign propagation stalled");
  }
  return A;
}

}  // namespace

Mat4Recovery recover_mat4(const Mat6& B, double tol) {
  Mat6 G = B.transpose() * Jmat6() * B;
  double scale = std::max(1.0, G.norm());
  bool orthogonal;
  if ((G - Jmat6()).norm() <= tol * scale)
    orthogonal = true;
  else if ((G + Jmat6()).norm() <= tol * scale)
    orthogonal = false;
  else
    fail("NotRegular", "recover_mat4: B^T J B != +-J");

  double det = B.determinant();
  int dsign = det >= 0 ? +1 : -1;

  Mat4Recovery out;
  Mat6 Bhat = B;
  bool tcompose = false;
  if (orthogonal && dsign > 0) {
    out.polarity = false;
    out.det_sign = +1;
  } else if (!orthogonal && dsign < 0) {
    out.polarity = false;
    out.det_sign = -1;
    tcompose = true;
  } else if (orthogonal && dsign < 0) {
    out.polarity = true;
    out.det_sign = +1;
    Bhat = Jmat6() * Bhat;
  } else {  // anti-orthogonal, det +1
    out.polarity = true;
    out.det_sign = -1;
    Bhat = Jmat6() * Bhat;
    tcompose = true;
  }
  if (tcompose) Bhat = Bhat * Tmat6();

  Mat4 A = recover_sl4(Bhat, tol);
  // Normalize to det +1 for the SL(4) stage, then undo the T composition.
  double d = A.determinant();
  if (std::abs(d) < 1e-12) fail("NotRegular", "recover_mat4: degenerate recovery");
  A /= std::pow(std::abs(d), 0.25);
  if (tcompose) {
    Mat4 Td = Mat4::Identity();
    Td(0, 0) = -1.0;
    A = A * Td;
  }

  // Verify the recovery against the appropriate lift and fix the sign so the
  // first significant entry (row-major) is positive.
  Mat6 check = out.polarity ? dual_lift2(A) : lift2(A);
  double errp = (check - B).norm(), errm = (check + B).norm();
  if (std::min(errp, errm) > 1e-5 * std::max(1.0, B.norm()))
    fail("NotRegular", "recover_mat4: verification against lift failed");
  double maxa = A.cwiseAbs().maxCoeff();
  for (int i = 0; i < 16 && maxa > 0; ++i) {
    double v = A(i / 4, i % 4);
    if (std::abs(v) > 1e-6 * maxa) {
      if (v < 0) A = -A;
      break;
    }
  }
  out.A = A;
  return out;
}

}  // namespace lg

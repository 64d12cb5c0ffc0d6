#include "lg/multivector.hpp"

#include <cassert>
#include <cmath>
#include <vector>

namespace lg {
namespace {

// Sign of reordering the concatenated index lists of blades a, b into
// ascending order (counts transpositions of pairs i in a, j in b with i > j).
int reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  uint32_t at = a >> 1;
  while (at != 0) {
    swaps += std::popcount(at & b);
    at >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

// Exterior product of basis blades (metric-free): 0 on shared generators.
// Valid in any basis, used both for Witt and diagonal coordinates.
void accumulate_wedge(const std::array<double, 64>& a,
                      const std::array<double, 64>& b,
                      std::array<double, 64>& out) {
  for (uint32_t i = 0; i < 64; ++i) {
    if (a[i] == 0.0) continue;
    for (uint32_t j = 0; j < 64; ++j) {
      if (b[j] == 0.0 || (i & j)) continue;
      out[i | j] += a[i] * b[j] * reorder_sign(i, j);
    }
  }
}

// The product table is built once by diagonalizing the Witt metric:
//   f_i = (E_i + E_i')/sqrt(2)  (f_i^2 = +1),
//   g_i = (E_i - E_i')/sqrt(2)  (g_i^2 = -1).
// Blade products are exact in the orthogonal basis; converting back cancels
// all sqrt(2) factors, so every table coefficient is an integer or a half.
struct ProductTable {
  struct Term {
    uint8_t blade;
    double coeff;
  };
  // table[a*64+b] lists the Witt-basis expansion of (blade a)(blade b).
  std::array<std::vector<Term>, 64 * 64> terms;

  ProductTable() {
    const double s = 1.0 / std::sqrt(2.0);

    // Expansions of the 6 Witt generators in diagonal coordinates
    // (diagonal bits: 0..2 = f_1..f_3, 3..5 = g_1..g_3).
    std::array<std::array<double, 64>, 6> witt_gen{};
    for (int i = 0; i < 3; ++i) {
      witt_gen[i][1u << i] = s;            // E_i = (f_i + g_i)/sqrt2
      witt_gen[i][1u << (i + 3)] = s;
      witt_gen[i + 3][1u << i] = s;        // E_i' = (f_i - g_i)/sqrt2
      witt_gen[i + 3][1u << (i + 3)] = -s;
    }
    // Expansions of the 6 diagonal generators in Witt coordinates.
    std::array<std::array<double, 64>, 6> diag_gen{};
    for (int i = 0; i < 3; ++i) {
      diag_gen[i][1u << i] = s;            // f_i = (E_i + E_i')/sqrt2
      diag_gen[i][1u << (i + 3)] = s;
      diag_gen[i + 3][1u << i] = s;        // g_i = (E_i - E_i')/sqrt2
      diag_gen[i + 3][1u << (i + 3)] = -s;
    }

    auto expand = [](uint32_t bits,
                     const std::array<std::array<double, 64>, 6>& gens) {
      std::array<double, 64> acc{};
      acc[0] = 1.0;
      for (int i = 0; i < 6; ++i) {
        if (!(bits & (1u << i))) continue;
        std::array<double, 64> next{};
        accumulate_wedge(acc, gens[i], next);
        acc = next;
      }
      return acc;
    };

    std::array<std::array<double, 64>, 64> witt_to_diag;  // Witt blade -> diag coords
    std::array<std::array<double, 64>, 64> diag_to_witt;
    for (uint32_t b = 0; b < 64; ++b) {
      witt_to_diag[b] = expand(b, witt_gen);
      diag_to_witt[b] = expand(b, diag_gen);
    }

    // Geometric product of diagonal basis blades: reorder sign times the
    // metric of each shared generator (g squares to -1).
    auto diag_gp_sign = [](uint32_t p, uint32_t q) {
      int sign = reorder_sign(p, q);
      uint32_t common = p & q;
      sign *= (std::popcount(common & 0b111000u) & 1) ? -1 : 1;
      return sign;
    };

    for (uint32_t a = 0; a < 64; ++a) {
      for (uint32_t b = 0; b < 64; ++b) {
        std::array<double, 64> acc_diag{};
        const auto& da = witt_to_diag[a];
        const auto& db = witt_to_diag[b];
        for (uint32_t p = 0; p < 64; ++p) {
          if (da[p] == 0.0) continue;
          for (uint32_t q = 0; q < 64; ++q) {
            if (db[q] == 0.0) continue;
            acc_diag[p ^ q] += da[p] * db[q] * diag_gp_sign(p, q);
          }
        }
        std::array<double, 64> acc_witt{};
        for (uint32_t r = 0; r < 64; ++r) {
          if (acc_diag[r] == 0.0) continue;
          const auto& row = diag_to_witt[r];
          for (uint32_t w = 0; w < 64; ++w) acc_witt[w] += acc_diag[r] * row[w];
        }
        auto& dst = terms[a * 64 + b];
        for (uint32_t w = 0; w < 64; ++w) {
          // Coefficients are exact integers or halves; snap to kill the
          // sqrt(2) roundoff accumulated during the change of basis.
          double snapped = std::round(acc_witt[w] * 2.0) / 2.0;
          assert(std::abs(acc_witt[w] - snapped) < 1e-9);
          if (snapped != 0.0)
            dst.push_back({static_cast<uint8_t>(w), snapped});
        }
      }
    }
  }
};

const ProductTable& table() {
  static const ProductTable t;
  return t;
}

}  // namespace

Multivector blade_of(std::initializer_list<int> gens, double coeff) {
  uint32_t bits = 0;
  int sign = 1;
  for (int g : gens) {
    assert(g >= 0 && g < 6);
    uint32_t bit = 1u << g;
    if (bits & bit) return Multivector{};  // repeated generator
    // Count generators already placed that are larger than g.
    sign *= (std::popcount(bits >> (g + 1)) & 1) ? -1 : 1;
    bits |= bit;
  }
  return Multivector::blade(bits, sign * coeff);
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  const auto& t = table();
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i) {
    if (a.c[i] == 0.0) continue;
    for (uint32_t j = 0; j < 64; ++j) {
      if (b.c[j] == 0.0) continue;
      double f = a.c[i] * b.c[j];
      for (const auto& term : t.terms[i * 64 + j]) r.c[term.blade] += f * term.coeff;
    }
  }
  return r;
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i) {
    if (a.c[i] == 0.0) continue;
    for (uint32_t j = 0; j < 64; ++j) {
      if (b.c[j] == 0.0 || (i & j)) continue;
      r.c[i | j] += a.c[i] * b.c[j] * reorder_sign(i, j);
    }
  }
  return r;
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  const auto& t = table();
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i) {
    if (a.c[i] == 0.0) continue;
    int ga = grade_of(i);
    for (uint32_t j = 0; j < 64; ++j) {
      if (b.c[j] == 0.0) continue;
      int k = grade_of(j) - ga;
      if (k < 0) continue;
      double f = a.c[i] * b.c[j];
      for (const auto& term : t.terms[i * 64 + j])
        if (grade_of(term.blade) == k) r.c[term.blade] += f * term.coeff;
    }
  }
  return r;
}

Multivector inner_product(const Multivector& a, const Multivector& b) {
  const auto& t = table();
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i) {
    if (a.c[i] == 0.0) continue;
    int ga = grade_of(i);
    for (uint32_t j = 0; j < 64; ++j) {
      if (b.c[j] == 0.0) continue;
      int k = std::abs(grade_of(j) - ga);
      double f = a.c[i] * b.c[j];
      for (const auto& term : t.terms[i * 64 + j])
        if (grade_of(term.blade) == k) r.c[term.blade] += f * term.coeff;
    }
  }
  return r;
}

double scalar_product(const Multivector& a, const Multivector& b) {
  const auto& t = table();
  double s = 0.0;
  for (uint32_t i = 0; i < 64; ++i) {
    if (a.c[i] == 0.0) continue;
    for (uint32_t j = 0; j < 64; ++j) {
      if (b.c[j] == 0.0) continue;
      for (const auto& term : t.terms[i * 64 + j])
        if (term.blade == 0) s += a.c[i] * b.c[j] * term.coeff;
    }
  }
  return s;
}

Multivector grade_project(const Multivector& a, int k) {
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i)
    if (grade_of(i) == k) r.c[i] = a.c[i];
  return r;
}

Multivector reverse(const Multivector& a) {
  Multivector r;
  for (uint32_t i = 0; i < 64; ++i) {
    int k = grade_of(i);
    r.c[i] = ((k * (k - 1) / 2) & 1) ? -a.c[i] : a.c[i];
  }
  return r;
}

Multivector exp_bivector(const Multivector& B, double tol) {
  for (uint32_t i = 0; i < 64; ++i)
    if (B.c[i] != 0.0 && grade_of(i) != 2)
      fail("NotBivector", "exp_bivector: argument has non-grade-2 part");

  // Scaling and squaring: exp(B) = exp(B/2^k)^(2^k) with ||B/2^k|| <= 1.
  int squarings = 0;
  double n = norm(B);
  while (n > 1.0 && squarings < 60) {
    n *= 0.5;
    ++squarings;
  }
  Multivector Bs = B * std::ldexp(1.0, -squarings);

  Multivector result = Multivector::scalar(1.0);
  Multivector term = Multivector::scalar(1.0);
  bool converged = false;
  for (int k = 1; k <= 64; ++k) {
    term = geometric_product(term, Bs) * (1.0 / k);
    result += term;
    if (norm(term) <= tol * std::max(1.0, norm(result))) {
      converged = true;
      break;
    }
  }
  if (!converged) fail("NoConvergence", "exp_bivector: series did not converge");
  for (int k = 0; k < squarings; ++k) result = geometric_product(result, result);
  return result;
}

double norm(const Multivector& a) {
  double s = 0.0;
  for (double v : a.c) s += v * v;
  return std::sqrt(s);
}

bool is_zero(const Multivector& a, double tol) {
  for (double v : a.c)
    if (std::abs(v) > tol) return false;
  return true;
}

bool approx_equal(const Multivector& a, const Multivector& b, double rtol,
                  double atol) {
  double scale = std::max(norm(a), norm(b));
  return max_coeff_diff(a, b) <= atol + rtol * scale;
}

double max_coeff_diff(const Multivector& a, const Multivector& b) {
  double m = 0.0;
  for (int i = 0; i < 64; ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

std::string blade_label(uint32_t bits) {
  bits &= 63u;
  if (bits == 0) return "scalar";
  std::string s;
  for (int i = 0; i < 3; ++i)
    if (bits & (1u << i)) s += static_cast<char>('1' + i);
  for (int i = 0; i < 3; ++i)
    if (bits & (1u << (i + 3))) {
      s += static_cast<char>('1' + i);
      s += 'p';
    }
  return s;
}

uint32_t blade_from_label(const std::string& label) {
  if (label == "scalar") return 0;
  uint32_t bits = 0;
  for (size_t i = 0; i < label.size(); ++i) {
    char d = label[i];
    if (d < '1' || d > '3') fail("BadBlade", "bad blade label: " + label);
    int gen = d - '1';
    if (i + 1 < label.size() && label[i + 1] == 'p') {
      gen += 3;
      ++i;
    }
    uint32_t bit = 1u << gen;
    if (bits & bit) fail("BadBlade", "repeated generator in label: " + label);
    bits |= bit;
  }
  return bits;
}

namespace {
Multivector make_I3() { return blade_of({0, 1, 2}); }
Multivector make_J3() { return blade_of({3, 4, 5}); }
Multivector make_I33() { return blade_of({0, 1, 2, 3, 4, 5}); }
Multivector make_K2() {
  return blade_of({0, 3}) + blade_of({1, 4}) + blade_of({2, 5});
}
Multivector make_C3() {
  // E_{12'3'} + E_{23'1'} + E_{31'2'}
  return blade_of({0, 4, 5}) + blade_of({1, 5, 3}) + blade_of({2, 3, 4});
}
Multivector make_D3() {
  // E_{1'23} + E_{2'31} + E_{3'12}
  return blade_of({3, 1, 2}) + blade_of({4, 2, 0}) + blade_of({5, 0, 1});
}
}  // namespace

const Multivector& I3() {
  static const Multivector m = make_I3();
  return m;
}
const Multivector& J3() {
  static const Multivector m = make_J3();
  return m;
}
const Multivector& I33() {
  static const Multivector m = make_I33();
  return m;
}
const Multivector& K2() {
  static const Multivector m = make_K2();
  return m;
}
const Multivector& C3() {
  static const Multivector m = make_C3();
  return m;
}
const Multivector& D3() {
  static const Multivector m = make_D3();
  return m;
}

Multivector Vector33::mv() const {
  Multivector m;
  for (int i = 0; i < 3; ++i) {
    m.c[1u << i] = x[i];
    m.c[1u << (i + 3)] = y[i];
  }
  return m;
}

Vector33 Vector33::from_mv(const Multivector& m) {
  for (uint32_t i = 0; i < 64; ++i)
    if (m.c[i] != 0.0 && grade_of(i) != 1)
      fail("NotVector", "from_mv: multivector is not pure grade 1");
  Vector33 v;
  for (int i = 0; i < 3; ++i) {
    v.x[i] = m.c[1u << i];
    v.y[i] = m.c[1u << (i + 3)];
  }
  return v;
}

Multivector apply_outermorphism(const Mat6& B, const Multivector& a) {
  // Images of the 6 generators as grade-1 multivectors.
  std::array<Multivector, 6> img;
  for (int j = 0; j < 6; ++j) img[j] = Vector33::from_v6(B.col(j)).mv();

  Multivector r;
  for (uint32_t bits = 0; bits < 64; ++bits) {
    if (a.c[bits] == 0.0) continue;
    Multivector w = Multivector::scalar(1.0);
    for (int i = 0; i < 6; ++i)
      if (bits & (1u << i)) w = outer_product(w, img[i]);
    r += w * a.c[bits];
  }
  return r;
}

}  // namespace lg

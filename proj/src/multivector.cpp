#include "cbv/multivector.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cbv {

namespace {

struct CayleyTable {
  // sign[a][b] for basis blade product; result mask is a ^ b.
  std::array<std::array<double, 16>, 16> sign{};

  CayleyTable() {
    for (unsigned a = 0; a < 16; ++a)
      for (unsigned b = 0; b < 16; ++b) sign[a][b] = compute(a, b);
  }

  static double compute(unsigned a, unsigned b) {
    // Count transpositions needed to merge the ascending products: each
    // generator of b must move left past the generators of a with larger index.
    int swaps = 0;
    unsigned ah = a >> 1;
    while (ah) {
      swaps += std::popcount(ah & b);
      ah >>= 1;
    }
    double s = (swaps & 1) ? -1.0 : 1.0;
    unsigned common = a & b;
    for (int i = 0; i < 4; ++i)
      if (common & (1u << i)) s *= kEta[static_cast<std::size_t>(i)];
    return s;
  }
};

const CayleyTable& table() {
  static const CayleyTable t;
  return t;
}

}  // namespace

double cayley_sign(unsigned a, unsigned b) { return table().sign[a][b]; }

int grade_of_mask(unsigned mask) { return std::popcount(mask); }

Multivector Multivector::scalar(double s) {
  Multivector m;
  m.c[0] = s;
  return m;
}

Multivector Multivector::basis(int a) {
  if (a < 0 || a > 3) throw std::out_of_range("basis index");
  Multivector m;
  m.c[1u << a] = 1.0;
  return m;
}

Multivector Multivector::blade(unsigned mask, double coeff) {
  if (mask > 15) throw std::out_of_range("blade mask");
  Multivector m;
  m.c[mask] = coeff;
  return m;
}

Multivector Multivector::pseudoscalar() { return blade(0xF); }

Multivector Multivector::operator+(const Multivector& o) const {
  Multivector r;
  for (int i = 0; i < 16; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

Multivector Multivector::operator-(const Multivector& o) const {
  Multivector r;
  for (int i = 0; i < 16; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

Multivector Multivector::operator-() const {
  Multivector r;
  for (int i = 0; i < 16; ++i) r.c[i] = -c[i];
  return r;
}

Multivector Multivector::operator*(double s) const {
  Multivector r;
  for (int i = 0; i < 16; ++i) r.c[i] = c[i] * s;
  return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  for (int i = 0; i < 16; ++i) c[i] += o.c[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (int i = 0; i < 16; ++i) c[i] -= o.c[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (int i = 0; i < 16; ++i) c[i] *= s;
  return *this;
}

Multivector operator*(double s, const Multivector& m) { return m * s; }

Multivector gp(const Multivector& a, const Multivector& b) {
  Multivector r;
  const auto& t = table();
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0) continue;
    for (unsigned j = 0; j < 16; ++j) {
      if (b.c[j] == 0.0) continue;
      r.c[i ^ j] += t.sign[i][j] * a.c[i] * b.c[j];
    }
  }
  return r;
}

Multivector outer(const Multivector& a, const Multivector& b) {
  // On orthogonal basis blades the grade-(r+s) part of the product survives
  // exactly when the blades share no generator.
  Multivector r;
  const auto& t = table();
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0) continue;
    for (unsigned j = 0; j < 16; ++j) {
      if (b.c[j] == 0.0 || (i & j) != 0) continue;
      r.c[i | j] += t.sign[i][j] * a.c[i] * b.c[j];
    }
  }
  return r;
}

Multivector left_contract(const Multivector& a, const Multivector& b) {
  // Grade-(s-r) part: survives exactly when every generator of the left blade
  // occurs in the right blade.
  Multivector r;
  const auto& t = table();
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0) continue;
    for (unsigned j = 0; j < 16; ++j) {
      if (b.c[j] == 0.0 || (i & j) != i) continue;
      r.c[i ^ j] += t.sign[i][j] * a.c[i] * b.c[j];
    }
  }
  return r;
}

Multivector right_contract(const Multivector& a, const Multivector& b) {
  Multivector r;
  const auto& t = table();
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0) continue;
    for (unsigned j = 0; j < 16; ++j) {
      if (b.c[j] == 0.0 || (i & j) != j) continue;
      r.c[i ^ j] += t.sign[i][j] * a.c[i] * b.c[j];
    }
  }
  return r;
}

double scalar_product(const Multivector& a, const Multivector& b) {
  double s = 0.0;
  const auto& t = table();
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0 || b.c[i] == 0.0) continue;
    int k = std::popcount(i);
    double rev = ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
    s += rev * t.sign[i][i] * a.c[i] * b.c[i];
  }
  return s;
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > 4) throw std::out_of_range("grade");
  Multivector r;
  for (unsigned i = 0; i < 16; ++i)
    if (std::popcount(i) == k) r.c[i] = a.c[i];
  return r;
}

Multivector reverse(const Multivector& a) {
  Multivector r;
  for (unsigned i = 0; i < 16; ++i) {
    int k = std::popcount(i);
    r.c[i] = (((k * (k - 1) / 2) & 1) ? -1.0 : 1.0) * a.c[i];
  }
  return r;
}

Multivector grade_involution(const Multivector& a) {
  Multivector r;
  for (unsigned i = 0; i < 16; ++i)
    r.c[i] = ((std::popcount(i) & 1) ? -1.0 : 1.0) * a.c[i];
  return r;
}

Multivector hodge_star(const Multivector& a) {
  return gp(reverse(a), Multivector::pseudoscalar());
}

Multivector hodge_star_inverse(const Multivector& a) {
  Multivector r;
  Multivector star = hodge_star(a);
  // hodge_star maps grade p -> 4-p; apply the per-grade prefactor to the
  // source grade p of each target component.
  for (unsigned i = 0; i < 16; ++i) {
    int p = 4 - std::popcount(i);
    double f = (((p * (4 - p) + 1) & 1) ? -1.0 : 1.0);
    r.c[i] = f * star.c[i];
  }
  return r;
}

Multivector commutator(const Multivector& a, const Multivector& b) {
  return gp(a, b) - gp(b, a);
}

double max_abs(const Multivector& a) {
  double m = 0.0;
  for (double v : a.c) m = std::max(m, std::abs(v));
  return m;
}

bool approx_equal(const Multivector& a, const Multivector& b, double abs_tol,
                  double rel_tol) {
  double scale = std::max(max_abs(a), max_abs(b));
  double tol = std::max(abs_tol, rel_tol * scale);
  for (int i = 0; i < 16; ++i)
    if (std::abs(a.c[i] - b.c[i]) > tol) return false;
  return true;
}

bool is_even(const Multivector& a, double abs_tol) {
  for (unsigned i = 0; i < 16; ++i)
    if ((std::popcount(i) & 1) && std::abs(a.c[i]) > abs_tol) return false;
  return true;
}

std::string to_string(const Multivector& a) {
  static const char* names[16] = {
      "1",    "g0",   "g1",   "g01",  "g2",   "g02",  "g12",  "g012",
      "g3",   "g03",  "g13",  "g013", "g23",  "g023", "g123", "g0123"};
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < 16; ++i) {
    if (a.c[i] == 0.0) continue;
    if (!first) os << " + ";
    os << a.c[i] << "*" << names[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace cbv

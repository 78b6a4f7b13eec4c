#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>

namespace cbv {

// Dense element of the real Clifford algebra Cl(1,3) built on an orthonormal
// basis g_0..g_3 with eta = diag(+1,-1,-1,-1).  Component index is the blade
// mask: bit b set  <=>  generator g_b present, generators in ascending order.
// The same kernel serves tangent-space multivectors (e_a) and cotangent-space
// multiforms (theta^a); fields that care about the distinction tag it.
struct Multivector {
  std::array<double, 16> c{};

  Multivector() = default;

  static Multivector scalar(double s);
  // Basis vector g_a, a in 0..3.
  static Multivector basis(int a);
  // Basis blade for a 4-bit mask (canonical ascending order), with coefficient.
  static Multivector blade(unsigned mask, double coeff = 1.0);
  // Unit pseudoscalar g_0 g_1 g_2 g_3.
  static Multivector pseudoscalar();

  double  operator[](std::size_t i) const { return c[i]; }
  double& operator[](std::size_t i)       { return c[i]; }

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator-() const;
  Multivector operator*(double s) const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  bool operator==(const Multivector& o) const { return c == o.c; }
};

Multivector operator*(double s, const Multivector& m);

// Geometric product.
Multivector gp(const Multivector& a, const Multivector& b);
// Exterior (outer) product: sum of <  <A>_r <B>_s  >_{r+s}.
Multivector outer(const Multivector& a, const Multivector& b);
// Left contraction A _| B and right contraction A |_ B.
Multivector left_contract(const Multivector& a, const Multivector& b);
Multivector right_contract(const Multivector& a, const Multivector& b);
// Scalar product: grade-wise <reverse(A) B>_0 (Gram determinant on blades).
double scalar_product(const Multivector& a, const Multivector& b);

Multivector grade_project(const Multivector& a, int k);  // k in 0..4
Multivector reverse(const Multivector& a);               // (-1)^{k(k-1)/2}
Multivector grade_involution(const Multivector& a);      // (-1)^k
// Hodge dual  *A_p = reverse(A_p) g5  and its inverse
// *^{-1}A = (-1)^{p(4-p)+1} *A applied grade-wise.
Multivector hodge_star(const Multivector& a);
Multivector hodge_star_inverse(const Multivector& a);
Multivector commutator(const Multivector& a, const Multivector& b);  // AB - BA

int    grade_of_mask(unsigned mask);
double max_abs(const Multivector& a);
bool   approx_equal(const Multivector& a, const Multivector& b,
                    double abs_tol = 1e-12, double rel_tol = 1e-10);
// True if only grades 0,2,4 are populated (within abs_tol).
bool is_even(const Multivector& a, double abs_tol = 0.0);

std::string to_string(const Multivector& a);

// Signed structure constants: g_mask_a * g_mask_b = sign * g_(a XOR b),
// with metric contraction of repeated generators included in the sign.
double cayley_sign(unsigned a, unsigned b);

inline constexpr std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

}  // namespace cbv

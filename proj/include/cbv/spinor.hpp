#pragma once

#include <array>
#include <complex>

#include "cbv/multivector.hpp"

namespace cbv {

using Complex = std::complex<double>;

// 2x2 complex matrix image of the even subalgebra, row-major.
struct PauliMatrix2 {
  std::array<std::array<Complex, 2>, 2> m{};

  Complex  operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  Complex& operator()(int r, int c)       { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

  static PauliMatrix2 identity();
  static PauliMatrix2 pauli(int k);  // k in 1..3: the standard Pauli matrices

  PauliMatrix2 operator+(const PauliMatrix2& o) const;
  PauliMatrix2 operator-(const PauliMatrix2& o) const;
  PauliMatrix2 operator*(const PauliMatrix2& o) const;
  PauliMatrix2 operator*(Complex s) const;
};

double max_abs(const PauliMatrix2& a);
bool approx_equal(const PauliMatrix2& a, const PauliMatrix2& b,
                  double abs_tol = 1e-12);

// Even multivector (grades 0,2,4): an element of the Pauli algebra realized
// inside Cl(1,3) with sigma^k = g_k g_0 and formal imaginary unit i = g5.
struct PauliNumber {
  Multivector even;

  PauliNumber() = default;
  explicit PauliNumber(const Multivector& m);  // throws unless even

  PauliNumber operator+(const PauliNumber& o) const { return PauliNumber(even + o.even); }
  PauliNumber operator-(const PauliNumber& o) const { return PauliNumber(even - o.even); }
  PauliNumber operator*(const PauliNumber& o) const { return PauliNumber(gp(even, o.even)); }
  PauliNumber operator*(double s) const { return PauliNumber(even * s); }
};

// sigma^k (k = 1..3) and the algebra's imaginary unit (the pseudoscalar).
Multivector sigma(int k);
Multivector pauli_unit_i();
// Complex scalar z = x + i y realized as x + y g5.
Multivector complex_scalar(Complex z);

// Minimal idempotent e = (1/2)(1 + sigma^3); matrix image [[1,0],[0,0]].
PauliNumber idempotent();

// Representation map onto C(2) (and its inverse): 1 -> I, sigma^k -> pauli(k),
// pseudoscalar -> i I.  An algebra isomorphism.
PauliMatrix2 to_matrix(const PauliNumber& p);
PauliNumber  from_matrix(const PauliMatrix2& m);

// Element of the minimal left ideal (even algebra) * e: an algebraic
// contravariant undotted spinor, column image (phi1, phi2)^T.
struct IdealSpinor {
  PauliNumber value;  // invariant: value * e == value

  IdealSpinor() = default;
  explicit IdealSpinor(const PauliNumber& v);      // checks the invariant
  static IdealSpinor from_components(Complex phi1, Complex phi2);
  std::array<Complex, 2> components() const;       // column entries
};

// Element of the minimal right ideal e * (even algebra): an algebraic
// covariant dotted spinor, row image (xi_1dot, xi_2dot).
struct DottedSpinor {
  PauliNumber value;  // invariant: e * value == value

  DottedSpinor() = default;
  explicit DottedSpinor(const PauliNumber& v);
  static DottedSpinor from_components(Complex x1, Complex x2);
  std::array<Complex, 2> components() const;       // row entries
};

// Ideal basis elements: s_A (left ideal) and s^{Adot} (right ideal), A in 1,2.
IdealSpinor  ideal_basis(int A);
DottedSpinor dotted_basis(int A);

// iota(phi (x) xidot) = phi * xidot: Clifford product landing in the even
// algebra; bilinear and reconstructs the sigma basis.
PauliNumber iota(const IdealSpinor& phi, const DottedSpinor& xidot);

// epsilon = [[0,1],[-1,0]] = i * pauli(2); used for index gymnastics and for
// forming the dotted companion of an undotted spinor.
PauliMatrix2 epsilon_matrix();

// phi_A = phi^B eps_BA and its inverse phi^B = eps^{BA} phi_A.
std::array<Complex, 2> lower_index(const std::array<Complex, 2>& upper);
std::array<Complex, 2> raise_index(const std::array<Complex, 2>& lower);

// xi (column, contravariant undotted) -> xidot = conj(xi)^T eps (row).
DottedSpinor dotted_from_undotted(const IdealSpinor& xi);

// Quaternion {1, i-hat, j-hat, k-hat} -> {1, -i sigma^1, -i sigma^2, -i sigma^3}.
PauliNumber quaternion_embed(const std::array<double, 4>& q);

// The two matrix decompositions of a Pauli number: mixed-index
// P = P^A_{Bdot} s_A (x) s^{Bdot} and two-lower-index P = P_AB s^A (x) s^B.
// Both coefficient arrays are returned row-major over (A,B).
std::array<std::array<Complex, 2>, 2> decompose_mixed(const PauliNumber& p);
std::array<std::array<Complex, 2>, 2> decompose_lower(const PauliNumber& p);

// Kronecker product of a column and a row 2-vector (outer product matrix).
PauliMatrix2 kronecker(const std::array<Complex, 2>& col,
                       const std::array<Complex, 2>& row);

}  // namespace cbv

#include "cbv/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace cbv {

namespace {

const Complex kI(0.0, 1.0);

// Real orthogonal basis of the even subalgebra over R:
// {1, sigma^k, i sigma^k, i}, with i the pseudoscalar.
struct EvenBasis {
  Multivector one, sig[3], isig[3], unit_i;
  double norm_one, norm_sig[3], norm_isig[3], norm_i;

  EvenBasis() {
    one = Multivector::scalar(1.0);
    unit_i = Multivector::pseudoscalar();
    for (int k = 0; k < 3; ++k) {
      sig[k] = sigma(k + 1);
      isig[k] = gp(unit_i, sig[k]);
    }
    norm_one = scalar_product(one, one);
    norm_i = scalar_product(unit_i, unit_i);
    for (int k = 0; k < 3; ++k) {
      norm_sig[k] = scalar_product(sig[k], sig[k]);
      norm_isig[k] = scalar_product(isig[k], isig[k]);
    }
  }
};

const EvenBasis& even_basis() {
  static const EvenBasis b;
  return b;
}

}  // namespace

PauliMatrix2 PauliMatrix2::identity() {
  PauliMatrix2 r;
  r(0, 0) = r(1, 1) = 1.0;
  return r;
}

PauliMatrix2 PauliMatrix2::pauli(int k) {
  PauliMatrix2 r;
  switch (k) {
    case 1: r(0, 1) = 1.0; r(1, 0) = 1.0; break;
    case 2: r(0, 1) = -kI; r(1, 0) = kI; break;
    case 3: r(0, 0) = 1.0; r(1, 1) = -1.0; break;
    default: throw std::out_of_range("pauli index");
  }
  return r;
}

PauliMatrix2 PauliMatrix2::operator+(const PauliMatrix2& o) const {
  PauliMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, j) + o(i, j);
  return r;
}

PauliMatrix2 PauliMatrix2::operator-(const PauliMatrix2& o) const {
  PauliMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, j) - o(i, j);
  return r;
}

PauliMatrix2 PauliMatrix2::operator*(const PauliMatrix2& o) const {
  PauliMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
  return r;
}

PauliMatrix2 PauliMatrix2::operator*(Complex s) const {
  PauliMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, j) * s;
  return r;
}

double max_abs(const PauliMatrix2& a) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

bool approx_equal(const PauliMatrix2& a, const PauliMatrix2& b,
                  double abs_tol) {
  return max_abs(a - b) <= abs_tol;
}

PauliNumber::PauliNumber(const Multivector& m) : even(m) {
  if (!is_even(m, 0.0)) throw std::invalid_argument("PauliNumber: odd grades");
}

Multivector sigma(int k) {
  if (k < 1 || k > 3) throw std::out_of_range("sigma index");
  return gp(Multivector::basis(k), Multivector::basis(0));
}

Multivector pauli_unit_i() { return Multivector::pseudoscalar(); }

Multivector complex_scalar(Complex z) {
  return Multivector::scalar(z.real()) + pauli_unit_i() * z.imag();
}

PauliNumber idempotent() {
  return PauliNumber((Multivector::scalar(1.0) + sigma(3)) * 0.5);
}

PauliMatrix2 to_matrix(const PauliNumber& p) {
  const EvenBasis& b = even_basis();
  double x0 = scalar_product(b.one, p.even) / b.norm_one;
  double y0 = scalar_product(b.unit_i, p.even) / b.norm_i;
  PauliMatrix2 r = PauliMatrix2::identity() * Complex(x0, y0);
  for (int k = 0; k < 3; ++k) {
    double xk = scalar_product(b.sig[k], p.even) / b.norm_sig[k];
    double yk = scalar_product(b.isig[k], p.even) / b.norm_isig[k];
    r = r + PauliMatrix2::pauli(k + 1) * Complex(xk, yk);
  }
  return r;
}

PauliNumber from_matrix(const PauliMatrix2& m) {
  Complex z0 = (m(0, 0) + m(1, 1)) * 0.5;
  Complex z1 = (m(0, 1) + m(1, 0)) * 0.5;
  Complex z2 = (m(0, 1) - m(1, 0)) * (kI * 0.5);
  Complex z3 = (m(0, 0) - m(1, 1)) * 0.5;
  Multivector r = complex_scalar(z0);
  const Complex z[3] = {z1, z2, z3};
  for (int k = 0; k < 3; ++k) r += gp(complex_scalar(z[k]), sigma(k + 1));
  return PauliNumber(r);
}

IdealSpinor::IdealSpinor(const PauliNumber& v) : value(v) {
  PauliNumber proj = v * idempotent();
  if (max_abs(proj.even - v.even) > 1e-12 * std::max(1.0, max_abs(v.even)))
    throw std::invalid_argument("IdealSpinor: not in the left ideal");
}

IdealSpinor IdealSpinor::from_components(Complex phi1, Complex phi2) {
  Multivector e = idempotent().even;
  Multivector s2 = gp(sigma(1), e);
  return IdealSpinor(
      PauliNumber(gp(complex_scalar(phi1), e) + gp(complex_scalar(phi2), s2)));
}

std::array<Complex, 2> IdealSpinor::components() const {
  PauliMatrix2 m = to_matrix(value);
  return {m(0, 0), m(1, 0)};
}

DottedSpinor::DottedSpinor(const PauliNumber& v) : value(v) {
  PauliNumber proj = idempotent() * v;
  if (max_abs(proj.even - v.even) > 1e-12 * std::max(1.0, max_abs(v.even)))
    throw std::invalid_argument("DottedSpinor: not in the right ideal");
}

DottedSpinor DottedSpinor::from_components(Complex x1, Complex x2) {
  Multivector e = idempotent().even;
  Multivector s2 = gp(e, sigma(1));
  return DottedSpinor(
      PauliNumber(gp(complex_scalar(x1), e) + gp(complex_scalar(x2), s2)));
}

std::array<Complex, 2> DottedSpinor::components() const {
  PauliMatrix2 m = to_matrix(value);
  return {m(0, 0), m(0, 1)};
}

IdealSpinor ideal_basis(int A) {
  switch (A) {
    case 1: return IdealSpinor::from_components(1.0, 0.0);
    case 2: return IdealSpinor::from_components(0.0, 1.0);
    default: throw std::out_of_range("ideal basis index");
  }
}

DottedSpinor dotted_basis(int A) {
  switch (A) {
    case 1: return DottedSpinor::from_components(1.0, 0.0);
    case 2: return DottedSpinor::from_components(0.0, 1.0);
    default: throw std::out_of_range("dotted basis index");
  }
}

PauliNumber iota(const IdealSpinor& phi, const DottedSpinor& xidot) {
  return phi.value * xidot.value;
}

PauliMatrix2 epsilon_matrix() {
  PauliMatrix2 r;
  r(0, 1) = 1.0;
  r(1, 0) = -1.0;
  return r;
}

std::array<Complex, 2> lower_index(const std::array<Complex, 2>& upper) {
  // phi_A = phi^B eps_BA with eps_12 = 1, eps_21 = -1.
  return {-upper[1], upper[0]};
}

std::array<Complex, 2> raise_index(const std::array<Complex, 2>& lower) {
  // phi^B = eps^{BA} phi_A.
  return {lower[1], -lower[0]};
}

DottedSpinor dotted_from_undotted(const IdealSpinor& xi) {
  std::array<Complex, 2> c = xi.components();
  // row(conj(xi)) * eps = (-conj(xi2), conj(xi1))
  return DottedSpinor::from_components(-std::conj(c[1]), std::conj(c[0]));
}

PauliNumber quaternion_embed(const std::array<double, 4>& q) {
  Multivector r = Multivector::scalar(q[0]);
  Multivector i = pauli_unit_i();
  for (int k = 0; k < 3; ++k)
    r -= gp(i, sigma(k + 1)) * q[static_cast<std::size_t>(k + 1)];
  return PauliNumber(r);
}

std::array<std::array<Complex, 2>, 2> decompose_mixed(const PauliNumber& p) {
  PauliMatrix2 m = to_matrix(p);
  return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

std::array<std::array<Complex, 2>, 2> decompose_lower(const PauliNumber& p) {
  // Coefficients over the basis s^A (x) s^B, whose matrix images coincide
  // with the elementary matrices E_AB (index identifications of the rep).
  return decompose_mixed(p);
}

PauliMatrix2 kronecker(const std::array<Complex, 2>& col,
                       const std::array<Complex, 2>& row) {
  PauliMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = col[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(j)];
  return r;
}

}  // namespace cbv

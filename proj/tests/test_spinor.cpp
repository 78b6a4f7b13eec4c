#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cbv/spinor.hpp"

using namespace cbv;

namespace {

PauliNumber random_pauli(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector m;
  for (unsigned i = 0; i < 16; ++i)
    if (grade_of_mask(i) % 2 == 0) m[i] = d(rng);
  return PauliNumber(m);
}

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return {d(rng), d(rng)};
}

}  // namespace

TEST_CASE("sigma relations inside the kernel") {
  // sigma^i sigma^j + sigma^j sigma^i = 2 delta^{ij}
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Multivector anti = gp(sigma(i), sigma(j)) + gp(sigma(j), sigma(i));
      CHECK(approx_equal(anti, Multivector::scalar(i == j ? 2.0 : 0.0), 0.0,
                         0.0));
      // sigma^i sigma^j = i eps^{ij}_k sigma^k + delta^{ij}
      Multivector expect = Multivector::scalar(i == j ? 1.0 : 0.0);
      for (int k = 1; k <= 3; ++k) {
        int eps = (i - j == 0) ? 0
                  : ((j - i + 3) % 3 == 1 && (k - j + 3) % 3 == 1) ? 1
                  : ((i - j + 3) % 3 == 1 && (k - i + 3) % 3 == 1) ? -1
                                                                   : 0;
        if (eps != 0) expect += gp(pauli_unit_i(), sigma(k)) * double(eps);
      }
      CHECK(approx_equal(gp(sigma(i), sigma(j)), expect, 0.0, 0.0));
    }
}

TEST_CASE("matrix representation examples and inverse") {
  CHECK(approx_equal(to_matrix(PauliNumber(sigma(3))), PauliMatrix2::pauli(3)));
  CHECK(approx_equal(to_matrix(PauliNumber(Multivector::scalar(1.0))),
                     PauliMatrix2::identity()));
  CHECK(approx_equal(to_matrix(PauliNumber(pauli_unit_i())),
                     PauliMatrix2::identity() * Complex(0.0, 1.0)));
  PauliMatrix2 e11;
  e11(0, 0) = 1.0;
  CHECK(approx_equal(to_matrix(idempotent()), e11));
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    PauliNumber p = random_pauli(rng);
    PauliNumber back = from_matrix(to_matrix(p));
    CHECK(max_abs(back.even - p.even) < 1e-13);
  }
}

TEST_CASE("representation homomorphism fuzz") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 1000; ++t) {
    PauliNumber p = random_pauli(rng), q = random_pauli(rng);
    PauliMatrix2 lhs = to_matrix(p * q);
    PauliMatrix2 rhs = to_matrix(p) * to_matrix(q);
    CHECK(max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("idempotent properties") {
  PauliNumber e = idempotent();
  CHECK(max_abs((e * e).even - e.even) == 0.0);
  PauliNumber one(Multivector::scalar(1.0));
  CHECK(max_abs((e * (one - e)).even) == 0.0);
  PauliMatrix2 m = to_matrix(e);
  CHECK(approx_equal(m * m, m));
}

TEST_CASE("kronecker values") {
  // s_1 kron s_2 and s^1 kron s^1 as elementary matrices
  std::array<Complex, 2> c1{1.0, 0.0}, c2{0.0, 1.0};
  PauliMatrix2 a = kronecker(c1, c2);
  CHECK(a(0, 1) == Complex(1.0));
  CHECK(max_abs(a) == 1.0);
  PauliMatrix2 b = kronecker(c1, c1);
  CHECK(b(0, 0) == Complex(1.0));
  CHECK(approx_equal(b, to_matrix(idempotent())));
}

TEST_CASE("iota reconstructs the sigma basis") {
  IdealSpinor s1 = ideal_basis(1), s2 = ideal_basis(2);
  DottedSpinor d1 = dotted_basis(1), d2 = dotted_basis(2);
  // sigma_0 = 1
  Multivector r0 = iota(s1, d1).even + iota(s2, d2).even;
  CHECK(approx_equal(r0, Multivector::scalar(1.0), 1e-14, 0.0));
  // sigma_1 = -sigma^1
  Multivector r1 = -(iota(s1, d2).even + iota(s2, d1).even);
  CHECK(approx_equal(r1, -sigma(1), 1e-14, 0.0));
  // sigma_2 = -sigma^2 via iota[i(s_1 (x) s^2dot - s_2 (x) s^1dot)]
  Multivector r2 =
      gp(pauli_unit_i(), iota(s1, d2).even - iota(s2, d1).even);
  CHECK(approx_equal(r2, -sigma(2), 1e-14, 0.0));
  // sigma_3 = -sigma^3
  Multivector r3 = -(iota(s1, d1).even - iota(s2, d2).even);
  CHECK(approx_equal(r3, -sigma(3), 1e-14, 0.0));
  // bilinearity and iota(0, xidot) = 0
  CHECK(max_abs(iota(IdealSpinor(), d1).even) == 0.0);
  std::mt19937_64 rng(107);
  Complex a = random_complex(rng), b = random_complex(rng);
  IdealSpinor phi = IdealSpinor::from_components(a, b);
  Multivector lin = iota(phi, d1).even;
  Multivector sum = gp(complex_scalar(a), iota(s1, d1).even) +
                    gp(complex_scalar(b), iota(s2, d1).even);
  CHECK(approx_equal(lin, sum, 1e-13, 0.0));
}

TEST_CASE("ideal membership invariant and component round trip") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 50; ++t) {
    Complex a = random_complex(rng), b = random_complex(rng);
    IdealSpinor phi = IdealSpinor::from_components(a, b);
    // value * e == value by construction (checked in ctor)
    auto c = phi.components();
    CHECK(std::abs(c[0] - a) < 1e-13);
    CHECK(std::abs(c[1] - b) < 1e-13);
    DottedSpinor xd = DottedSpinor::from_components(a, b);
    auto r = xd.components();
    CHECK(std::abs(r[0] - a) < 1e-13);
    CHECK(std::abs(r[1] - b) < 1e-13);
  }
  CHECK_THROWS(IdealSpinor(PauliNumber(sigma(1))));
}

TEST_CASE("epsilon and index raising and lowering") {
  PauliMatrix2 eps = epsilon_matrix();
  // eps = i sigma_2
  CHECK(approx_equal(eps, PauliMatrix2::pauli(2) * Complex(0.0, 1.0)));
  std::array<Complex, 2> up{1.0, 0.0};
  auto low = lower_index(up);
  CHECK(std::abs(low[0]) == 0.0);
  CHECK(std::abs(low[1] - Complex(1.0)) == 0.0);  // (0,1): (0,-1) up to orientation
  std::mt19937_64 rng(113);
  for (int t = 0; t < 50; ++t) {
    std::array<Complex, 2> x{random_complex(rng), random_complex(rng)};
    auto rt = raise_index(lower_index(x));
    CHECK(std::abs(rt[0] - x[0]) == 0.0);
    CHECK(std::abs(rt[1] - x[1]) == 0.0);
  }
}

TEST_CASE("dotted companion round trip via epsilon") {
  std::mt19937_64 rng(127);
  PauliMatrix2 eps = epsilon_matrix();
  for (int t = 0; t < 50; ++t) {
    Complex a = random_complex(rng), b = random_complex(rng);
    IdealSpinor xi = IdealSpinor::from_components(a, b);
    DottedSpinor xd = dotted_from_undotted(xi);
    auto row = xd.components();
    // xidot = conj(xi)^T eps
    CHECK(std::abs(row[0] - (-std::conj(b))) < 1e-13);
    CHECK(std::abs(row[1] - std::conj(a)) < 1e-13);
    // undo with eps^{-1} = -eps (epsdot = eps), recovering xi
    Complex u0 = -(row[0] * eps(0, 0) + row[1] * eps(1, 0));
    Complex u1 = -(row[0] * eps(0, 1) + row[1] * eps(1, 1));
    CHECK(std::abs(std::conj(u0) - a) < 1e-13);
    CHECK(std::abs(std::conj(u1) - b) < 1e-13);
  }
}

TEST_CASE("quaternion embedding is multiplicative") {
  auto one = quaternion_embed({1, 0, 0, 0});
  auto qi = quaternion_embed({0, 1, 0, 0});
  auto qj = quaternion_embed({0, 0, 1, 0});
  auto qk = quaternion_embed({0, 0, 0, 1});
  CHECK(approx_equal((qi * qj).even, qk.even, 1e-14, 0.0));
  CHECK(approx_equal((qj * qk).even, qi.even, 1e-14, 0.0));
  CHECK(approx_equal((qk * qi).even, qj.even, 1e-14, 0.0));
  CHECK(approx_equal((qi * qi).even, -one.even, 1e-14, 0.0));
  CHECK(approx_equal((qj * qj).even, -one.even, 1e-14, 0.0));
  CHECK(approx_equal((qk * qk).even, -one.even, 1e-14, 0.0));
  // not surjective onto the even subalgebra: sigma^1 (a paravector part)
  // has no quaternion preimage -- the image is spanned by {1, i sigma^k}
  // while sigma^1 is orthogonal to all four basis images.
  Multivector s1 = sigma(1);
  for (const auto& q : {one, qi, qj, qk})
    CHECK(scalar_product(s1, q.even) == doctest::Approx(0.0));
}

TEST_CASE("paravector products escape the paravector subspace") {
  // A, C in R + span(sigma^k): the product acquires an i sigma_k part.
  Multivector A = Multivector::scalar(0.5) + sigma(1);
  Multivector C = Multivector::scalar(-1.0) + sigma(2);
  Multivector P = gp(A, C);
  // witness component along i sigma^3
  Multivector is3 = gp(pauli_unit_i(), sigma(3));
  double coef = scalar_product(is3, P) / scalar_product(is3, is3);
  CHECK(std::abs(coef) > 0.5);
}

TEST_CASE("two matrix decompositions agree with the representation") {
  std::mt19937_64 rng(131);
  for (int t = 0; t < 20; ++t) {
    PauliNumber p = random_pauli(rng);
    auto mixed = decompose_mixed(p);
    auto lower = decompose_lower(p);
    PauliMatrix2 m = to_matrix(p);
    for (int A = 0; A < 2; ++A)
      for (int B = 0; B < 2; ++B) {
        CHECK(std::abs(mixed[static_cast<std::size_t>(A)][static_cast<std::size_t>(B)] - m(A, B)) < 1e-13);
        CHECK(std::abs(lower[static_cast<std::size_t>(A)][static_cast<std::size_t>(B)] - m(A, B)) < 1e-13);
      }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "cbv/multivector.hpp"

using namespace cbv;

namespace {

Multivector random_mv(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector m;
  for (int i = 0; i < 16; ++i) m[i] = d(rng);
  return m;
}

Multivector random_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector m;
  for (int a = 0; a < 4; ++a) m[1u << a] = d(rng);
  return m;
}

// Independent oracle for the left contraction of basis blades, built from the
// recursive rules  (A ^ B) _| C = A _| (B _| C)  and the graded Leibniz rule
// for a vector acting on a blade.  Never touches the Cayley table.
Multivector vector_contract_blade(int a, unsigned mask, double coeff) {
  Multivector r;
  if (!(mask & (1u << a))) return r;
  int pos = 0;
  for (int j = 0; j < a; ++j)
    if (mask & (1u << j)) ++pos;
  double sign = (pos % 2 == 0) ? 1.0 : -1.0;
  r[mask & ~(1u << a)] = sign * kEta[static_cast<std::size_t>(a)] * coeff;
  return r;
}

Multivector contract_oracle_blades(unsigned A, unsigned B) {
  if (A == 0) return Multivector::blade(B);
  // lowest generator of A: E_A = g_a ^ E_rest
  int a = std::countr_zero(A);
  unsigned rest = A & ~(1u << a);
  Multivector inner = contract_oracle_blades(rest, B);
  Multivector out;
  for (unsigned m = 0; m < 16; ++m)
    if (inner[m] != 0.0) out += vector_contract_blade(a, m, inner[m]);
  return out;
}

Multivector contract_oracle(const Multivector& A, const Multivector& B) {
  Multivector out;
  for (unsigned i = 0; i < 16; ++i) {
    if (A[i] == 0.0) continue;
    for (unsigned j = 0; j < 16; ++j) {
      if (B[j] == 0.0) continue;
      out += contract_oracle_blades(i, j) * (A[i] * B[j]);
    }
  }
  return out;
}

const Multivector g0 = Multivector::basis(0);
const Multivector g1 = Multivector::basis(1);
const Multivector g2 = Multivector::basis(2);
const Multivector g3 = Multivector::basis(3);
const Multivector I4 = Multivector::pseudoscalar();

}  // namespace

TEST_CASE("generator anticommutation relations reproduce the metric") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Multivector ga = Multivector::basis(a), gb = Multivector::basis(b);
      Multivector anti = gp(ga, gb) + gp(gb, ga);
      Multivector expect = Multivector::scalar(
          a == b ? 2.0 * kEta[static_cast<std::size_t>(a)] : 0.0);
      CHECK(approx_equal(anti, expect, 0.0, 0.0));
    }
}

TEST_CASE("unit and scalar behaviour") {
  std::mt19937_64 rng(7);
  Multivector one = Multivector::scalar(1.0);
  for (int k = 0; k < 10; ++k) {
    Multivector A = random_mv(rng);
    CHECK(approx_equal(gp(one, A), A));
    CHECK(approx_equal(gp(A, one), A));
  }
  CHECK(approx_equal(gp(g0, g0), one, 0.0, 0.0));
}

TEST_CASE("pauli generators of the even subalgebra") {
  // sigma^i = g^i g^0; the unit "i" is the pseudoscalar.
  Multivector s1 = gp(g1, g0), s2 = gp(g2, g0), s3 = gp(g3, g0);
  CHECK(approx_equal(gp(s1, s2), gp(I4, s3), 0.0, 0.0));
  CHECK(approx_equal(gp(s1, s1), Multivector::scalar(1.0), 0.0, 0.0));
  // sigma^i sigma^j + sigma^j sigma^i = 2 delta^{ij}
  const Multivector sig[3] = {s1, s2, s3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Multivector anti = gp(sig[i], sig[j]) + gp(sig[j], sig[i]);
      CHECK(approx_equal(anti, Multivector::scalar(i == j ? 2.0 : 0.0), 0.0,
                         0.0));
    }
  // commutators: [sigma^i, sigma^j] = 2 i eps^{ijk} sigma^k
  CHECK(approx_equal(commutator(s1, s2), gp(I4, s3) * 2.0, 0.0, 0.0));
  CHECK(approx_equal(commutator(s2, s3), gp(I4, s1) * 2.0, 0.0, 0.0));
  CHECK(approx_equal(commutator(s3, s1), gp(I4, s2) * 2.0, 0.0, 0.0));
  // i = sigma^1 sigma^2 sigma^3 = pseudoscalar
  CHECK(approx_equal(gp(gp(s1, s2), s3), I4, 0.0, 0.0));
}

TEST_CASE("associativity fuzz") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    Multivector A = random_mv(rng), B = random_mv(rng), C = random_mv(rng);
    Multivector lhs = gp(gp(A, B), C), rhs = gp(A, gp(B, C));
    double scale = std::max(1.0, std::max(max_abs(lhs), max_abs(rhs)));
    CHECK(max_abs(lhs - rhs) < 1e-12 * scale);
  }
}

TEST_CASE("outer product basics") {
  CHECK(approx_equal(outer(g1, g2), Multivector::blade(0b0110), 0.0, 0.0));
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    Multivector a = random_vector(rng);
    CHECK(max_abs(outer(a, a)) < 1e-14);
    Multivector b = random_vector(rng);
    CHECK(approx_equal(outer(a, b), -outer(b, a)));
    // graded symmetry A_r ^ B_s = (-1)^{rs} B_s ^ A_r on random homogeneous
    Multivector A = grade_project(random_mv(rng), 2);
    Multivector B = grade_project(random_mv(rng), 3);
    CHECK(approx_equal(outer(A, B), outer(B, A) * -1.0));
  }
}

TEST_CASE("half-commutator expansions of contraction and wedge with a vector") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    Multivector a = random_vector(rng);
    for (int s = 0; s <= 4; ++s) {
      Multivector B = grade_project(random_mv(rng), s);
      double sg = (s % 2 == 0) ? 1.0 : -1.0;
      Multivector lc = (gp(a, B) - gp(B, a) * sg) * 0.5;
      Multivector wd = (gp(a, B) + gp(B, a) * sg) * 0.5;
      CHECK(approx_equal(left_contract(a, B), lc));
      CHECK(approx_equal(outer(a, B), wd));
      CHECK(approx_equal(gp(a, B), left_contract(a, B) + outer(a, B)));
    }
  }
}

TEST_CASE("left contraction against recursive oracle") {
  // includes the determinant-style blade cases
  CHECK(approx_equal(left_contract(g0, g0), Multivector::scalar(1.0), 0.0, 0.0));
  Multivector b12 = outer(g1, g2);
  CHECK(approx_equal(left_contract(g1, b12), g2 * -1.0, 0.0, 0.0));
  CHECK(max_abs(left_contract(b12, g1)) == 0.0);
  std::mt19937_64 rng(19);
  for (int k = 0; k < 200; ++k) {
    Multivector A = random_mv(rng), B = random_mv(rng);
    CHECK(approx_equal(left_contract(A, B), contract_oracle(A, B)));
  }
}

TEST_CASE("contraction flip relation between left and right") {
  std::mt19937_64 rng(23);
  for (int r = 0; r <= 4; ++r)
    for (int s = r; s <= 4; ++s)
      for (int k = 0; k < 20; ++k) {
        Multivector A = grade_project(random_mv(rng), r);
        Multivector B = grade_project(random_mv(rng), s);
        double sg = ((r * (s - 1)) % 2 == 0) ? 1.0 : -1.0;
        CHECK(approx_equal(left_contract(A, B),
                           right_contract(B, A) * sg));
      }
}

TEST_CASE("scalar product values and cross-grade vanishing") {
  Multivector b01 = outer(g0, g1);
  CHECK(scalar_product(b01, b01) == doctest::Approx(-1.0));
  CHECK(scalar_product(Multivector::scalar(1.0), Multivector::scalar(1.0)) ==
        doctest::Approx(1.0));
  std::mt19937_64 rng(29);
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s) {
      if (r == s) continue;
      Multivector A = grade_project(random_mv(rng), r);
      Multivector B = grade_project(random_mv(rng), s);
      CHECK(scalar_product(A, B) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("grade projection reconstructs and spectrum obeys |r-s|+2k") {
  std::mt19937_64 rng(31);
  Multivector A = random_mv(rng);
  Multivector sum;
  for (int k = 0; k <= 4; ++k) sum += grade_project(A, k);
  CHECK(approx_equal(sum, A, 0.0, 0.0));
  CHECK(approx_equal(grade_project(Multivector::scalar(1.0) + g0 + I4, 4), I4,
                     0.0, 0.0));
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t < 10; ++t) {
        Multivector Ar = grade_project(random_mv(rng), r);
        Multivector Bs = grade_project(random_mv(rng), s);
        Multivector P = gp(Ar, Bs);
        for (int k = 0; k <= 4; ++k) {
          bool allowed = k >= std::abs(r - s) && k <= r + s &&
                         ((k - std::abs(r - s)) % 2 == 0);
          if (!allowed) CHECK(max_abs(grade_project(P, k)) < 1e-14);
        }
      }
}

TEST_CASE("reversion is a sign-graded anti-automorphism") {
  Multivector b01 = outer(g0, g1);
  CHECK(approx_equal(reverse(b01), b01 * -1.0, 0.0, 0.0));
  CHECK(approx_equal(reverse(I4), I4, 0.0, 0.0));
  std::mt19937_64 rng(37);
  for (int k = 0; k < 200; ++k) {
    Multivector A = random_mv(rng), B = random_mv(rng);
    CHECK(approx_equal(reverse(reverse(A)), A, 0.0, 0.0));
    CHECK(approx_equal(reverse(gp(A, B)), gp(reverse(B), reverse(A))));
  }
}

TEST_CASE("hodge star defining property and inverse") {
  CHECK(approx_equal(hodge_star(Multivector::scalar(1.0)), I4, 0.0, 0.0));
  CHECK(approx_equal(hodge_star(I4), Multivector::scalar(-1.0), 0.0, 0.0));
  // A ^ *B = (A . B) tau for blades of equal grade
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      if (std::popcount(a) != std::popcount(b)) continue;
      Multivector A = Multivector::blade(a), B = Multivector::blade(b);
      Multivector lhs = outer(A, hodge_star(B));
      Multivector rhs = I4 * scalar_product(A, B);
      CHECK(approx_equal(lhs, rhs, 0.0, 0.0));
    }
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    Multivector A = random_mv(rng);
    CHECK(approx_equal(hodge_star_inverse(hodge_star(A)), A));
    CHECK(approx_equal(hodge_star(hodge_star_inverse(A)), A));
  }
}

TEST_CASE("four hodge interchange identities") {
  std::mt19937_64 rng(43);
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s)
      for (int k = 0; k < 20; ++k) {
        Multivector A = grade_project(random_mv(rng), r);
        Multivector B = grade_project(random_mv(rng), s);
        if (r == s)
          CHECK(approx_equal(outer(A, hodge_star(B)),
                             outer(B, hodge_star(A))));
        if (r + s == 4)
          CHECK(approx_equal(left_contract(A, hodge_star(B)),
                             left_contract(B, hodge_star(A))));
        if (r <= s) {
          double sg = ((r * (s - 1)) % 2 == 0) ? 1.0 : -1.0;
          CHECK(approx_equal(
              outer(A, hodge_star(B)),
              hodge_star(left_contract(reverse(A), B)) * sg));
        }
        if (r + s <= 4) {
          double sg = ((r * s) % 2 == 0) ? 1.0 : -1.0;
          CHECK(approx_equal(left_contract(A, hodge_star(B)),
                             hodge_star(outer(reverse(A), B)) * sg));
        }
      }
}

TEST_CASE("half commutator of a bivector with a vector is a contraction") {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 100; ++k) {
    Multivector a = random_vector(rng);
    Multivector B = grade_project(random_mv(rng), 2);
    CHECK(approx_equal(commutator(B, a) * 0.5, -left_contract(a, B)));
    CHECK(approx_equal(commutator(B, a) * 0.5, right_contract(B, a)));
  }
}

TEST_CASE("even subalgebra closure and bivector lie closure") {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 100; ++k) {
    Multivector A = random_mv(rng), B = random_mv(rng);
    Multivector Ae = grade_project(A, 0) + grade_project(A, 2) +
                     grade_project(A, 4);
    Multivector Be = grade_project(B, 0) + grade_project(B, 2) +
                     grade_project(B, 4);
    CHECK(is_even(gp(Ae, Be), 1e-14));
    Multivector Ab = grade_project(A, 2), Bb = grade_project(B, 2);
    Multivector half = commutator(Ab, Bb) * 0.5;
    CHECK(approx_equal(half, grade_project(half, 2)));
    CHECK(max_abs(commutator(A, A)) < 1e-13);
  }
}

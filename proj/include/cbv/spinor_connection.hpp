#pragma once

#include <array>

#include "cbv/chart.hpp"
#include "cbv/forms.hpp"
#include "cbv/multivector.hpp"
#include "cbv/spinor.hpp"

namespace cbv {

// Formal Hermitian conjugate inside the kernel: M^dagger = e_0 reverse(M) e_0
// (for a bivector this is -e^0 M e^0).
Multivector clifford_dagger(const Multivector& m);
// Conjugate transpose of the 2x2 matrix image.
PauliMatrix2 conjugate_transpose(const PauliMatrix2& m);

// Frame-direction spinor connection bivector omega_{e_a} (= Omega_a of the
// chart layer) and its matrix image; the image is trace-free and satisfies
// the epsilon-conjugation property Omega = eps Omega^dagger eps.
Multivector  spinor_omega_frame(const TetradField& t, const ChartPoint& p,
                                int a);
PauliMatrix2 spinor_omega_matrix(const TetradField& t, const ChartPoint& p,
                                 int a);

enum class SpinorFlavor { undotted, dotted, pauli };

// Covariant spinor derivative along the coordinate direction nu:
// undotted: d_nu xi + (1/2) omega_nu xi; dotted: d_nu xi - (1/2) xi omega_nu;
// pauli:    d_nu P  + (1/2)[omega_nu, P].
Multivector spinor_covariant_derivative(const MvFun& field,
                                        const TetradField& t,
                                        const ChartPoint& p, int nu,
                                        SpinorFlavor flavor);

// Paravector fields q_mu = e_mu e_0 = h^a_mu sigma_a, the check-companion
// with (sigma-check_0 = -sigma_0, sigma-check_j = sigma_j), and the
// index-raised q^mu = g^{mu nu} q_nu.
Multivector paravector_q(const TetradField& t, const ChartPoint& p, int mu);
Multivector paravector_qcheck(const TetradField& t, const ChartPoint& p,
                              int mu);
Multivector paravector_q_upper(const TetradField& t, const ChartPoint& p,
                               int mu);
Multivector paravector_qcheck_upper(const TetradField& t, const ChartPoint& p,
                                    int mu);

// Spinor-bundle derivative of a paravector field (dagger rule):
// D_{e_nu} q_mu = d_nu q_mu + (1/2) omega_nu q_mu + (1/2) q_mu omega_nu^dagger.
Multivector paravector_derivative(const TetradField& t, const ChartPoint& p,
                                  int mu, int nu);

// Sachs' total derivative D^S_{e_nu} q_mu = D_{e_nu} q_mu - Gamma^al_{nu mu}
// q_al; identically zero (returns the max residual over mu, nu).
double sachs_residual(const TetradField& t, const ChartPoint& p);

struct QDecomposition {
  Mat4 metric_part{};                 // coefficient of sigma_0 in the
                                      // symmetric part (= -g_{mu nu})
  std::array<Mat4, 3> fprime{};       // tetrad antisymmetric part:
                                      // coefficient of i sigma_k, k = 1..3
  double symmetric_offdiagonal = 0.0; // non-scalar leak in the symmetric part
  double antisymmetric_sigma = 0.0;   // sigma_j (non-i-sigma) content of the
                                      // antisymmetric part
};

// Q (x) Q-check split into symmetric (metric) and antisymmetric parts.
QDecomposition q_tensor_decomposition(const TetradField& t,
                                      const ChartPoint& p);

struct InertialReport {
  double de0_max = 0.0;        // max_nu |D_{e_nu} e_0|
  double ric_e0_max = 0.0;     // max_b |Ric(e_0, e_b)|
  double geodesic = 0.0;       // |D_{e_0} e_0|
  double fermi = 0.0;          // max_i |D_{e_0} e_i|
  bool   teleparallel = false; // all connection coefficients ~ 0
};

InertialReport inertial_constraint_check(const TetradField& t,
                                         const ChartPoint& p);

// Residual of D_{e_mu} e_i = e_i (D_{e_mu} e_0) e_0 over mu, i (the
// realizability constraint for a vanishing derivative of the Pauli fields),
// and the same restricted to the frame direction e_0.
double pauli_constraint_residual(const TetradField& t, const ChartPoint& p);
double pauli_constraint_residual_frame0(const TetradField& t,
                                        const ChartPoint& p);

// Residual of omega_ab^c e_c - (1/2) omega_{e_a} e_b + (1/2) e_b omega_{e_a}
// over a, b; an identity for metric connection data.  The *_with overload
// accepts explicit frame connection bivectors (for negative controls).
double gamma_identity_residual(const TetradField& t, const ChartPoint& p);
double gamma_identity_residual_with(const TetradField& t, const ChartPoint& p,
                                    const std::array<Multivector, 4>& omega);

struct ContractionReport {
  double qqcheck = 0.0;         // |q^mu qcheck_mu + 4|
  double q_omega_q = 0.0;       // max_rho |q^mu omega_rho qcheck_mu|
  double omega_rebuild = 0.0;   // max_rho |omega_rho -
                                //   (1/2)(d_rho q^mu + Gamma q) qcheck_mu|
};

ContractionReport paravector_contractions(const TetradField& t,
                                          const ChartPoint& p);

}  // namespace cbv

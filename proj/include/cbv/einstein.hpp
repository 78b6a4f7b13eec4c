#pragma once

#include <array>
#include <functional>
#include <string>

#include "cbv/chart.hpp"
#include "cbv/forms.hpp"
#include "cbv/multivector.hpp"

namespace cbv {

// Stress-energy as a coordinate tensor field T_{mu nu} (gauge invariant);
// frame components are derived per tetrad where needed.
struct EnergyMomentumField {
  std::function<Mat4(const ChartPoint&)> coordinate;
};

EnergyMomentumField vacuum_energy_momentum();
// Comoving dust with rho = 4/(3 t^2) (kappa absorbed), T_{mu nu} =
// rho delta^0_mu delta^0_nu in the comoving chart.
EnergyMomentumField dust_energy_momentum();
// Chooses the analytic builtin source by spacetime name (dust for the
// matter-dominated flat cosmology, vacuum otherwise).
EnergyMomentumField analytic_energy_momentum(const TetradField& t);

Mat4 energy_momentum_frame(const EnergyMomentumField& em, const TetradField& t,
                           const ChartPoint& p);  // T_ab = h_a^mu h_b^nu T_{mu nu}

// Ricci 1-vectors, scalar curvature and the Einstein tensor obtained by
// contracting the curvature bivectors: R_a = -e^b _| R_ab.
struct RicciEinstein {
  std::array<Multivector, 4> ricci_vec{};  // R_a (kernel vectors)
  Mat4 ricci{};                            // R_ab (frame, lower indices)
  double scalar = 0.0;                     // R = eta^{ab} R_ab
  Mat4 einstein{};                         // G_ab = R_ab - (1/2) eta_ab R
  Mat4 einstein_coordinate{};              // G_{mu nu}
  double oracle_residual = 0.0;  // vs the coordinate Riemann-trace Ricci
};

RicciEinstein ricci_and_einstein(const TetradField& t, const ChartPoint& p);

// Gauge current of the curvature bivectors.  J is the covariant divergence
// J_nu = d_mu R^mu_nu + Gamma^mu_{mu tau} R^tau_nu - Gamma^tau_{mu nu}
// R^mu_tau + (1/2)[omega_mu, R^mu_nu]; hodge_residual compares the
// independent 3-form route d*R + (1/2)[omega, *R] wedge-commutator against
// -*(J_nu dx^nu) componentwise in the coordinate chart.  J_extended is the
// partial-derivative-plus-full-commutator variant (no Christoffel index
// terms), a gauge-dependent object that is generally nonzero even in vacuum;
// extended_mismatch records its distance from J.
struct GaugeCurrentReport {
  std::array<Multivector, 4> J{};
  std::array<Multivector, 4> J_extended{};
  double max_J = 0.0;
  double max_J_extended = 0.0;
  double extended_mismatch = 0.0;
  double hodge_residual = 0.0;
};

GaugeCurrentReport gauge_current(const TetradField& t, const ChartPoint& p);

// Maxwell-like even-multivector field strength built from the Ricci vectors,
// F_{alpha beta} = R_alpha e_beta - e_beta R_alpha
//                  - (1/2) R (e_alpha e_beta - e_beta e_alpha),
// its matter current J_beta = D_rho (T^rho e_beta - e_beta T^rho), and the
// residual of the divergence law D_rho F^rho_beta = J_beta (covariant
// derivative: (1/2)-commutator plus Christoffel index terms).  The extended
// variant uses the full commutator on both sides.
struct MaxwellLikeReport {
  std::array<std::array<Multivector, 4>, 4> F{};  // F_{mu nu}
  std::array<Multivector, 4> J{};                 // J_beta
  double divergence_residual = 0.0;
  double divergence_residual_extended = 0.0;
  double max_F = 0.0;
  double vacuum_symmetry = 0.0;  // |R_a e_b - R_b e_a| max (frame)
};

MaxwellLikeReport maxwell_like_F(const TetradField& t,
                                 const EnergyMomentumField& em,
                                 const ChartPoint& p);

// Paravector (Sachs) dressing of the Einstein equation.  With the kernel
// conventions used here the valid algebraic identities are
//   R_{rho lam} q^lam + q^lam Rdag_{rho lam} = 2 R_rho e_0,
// so the Einstein equation reads
//   R_{rho lam} q^lam + q^lam Rdag_{rho lam} - R q_rho = 2 T_rho  (eq1)
// (the variant with +R q_rho is kept as a negative control), and similarly
// for the check companion (eq1_check).  eq5 is the divergence law for the
// dressed field strength; eq943c is the paravector holonomy contraction
// R_{mu al rho lam} q^al = -(1/2)(q_mu Rdag_{rho lam} + R_{rho lam} q_mu).
struct SachsReport {
  double eq943c = 0.0;
  double eq943c_printed = 0.0;  // with the opposite sign (control)
  double eq1 = 0.0;
  double eq1_printed = 0.0;     // +R q_rho variant (control)
  double eq1_check = 0.0;
  double eq5 = 0.0;
  double eq5_control = 0.0;     // flipped scalar term in F (control)
  double cyclic = 0.0;          // cyclic covariant derivative of F
  double max_F = 0.0;
  double bivector_content = 0.0;  // largest grade-2 norm among the individual
                                  // sandwich terms of the dressed F
};

SachsReport sachs_equation_suite(const TetradField& t,
                                 const EnergyMomentumField& em,
                                 const ChartPoint& p);

// Cross-check of the three dressings of the Einstein tensor: the 1-form
// route (G^a_b theta^b), the dual 3-form route (1/2) R_ab ^ *(theta^a ^
// theta^b ^ theta^d), and the paravector route (1/2)(R q + q Rdag - R q).
// All three are reduced to coordinate components G_{mu nu}.
struct DressingReport {
  Mat4 one_form{};
  Mat4 three_form{};
  Mat4 paravector{};
  double pairwise_max = 0.0;
};

DressingReport einstein_dressings(const TetradField& t, const ChartPoint& p);

// Superpotential split of the dual Einstein 3-forms:
//   *G^a + d*S^a + *t^a = 0,
//   *S^c = -(1/2) omega_ab ^ *(theta^a ^ theta^b ^ theta^c)
// (the contraction produces the already-dual 2-form), and *t^c derived from
// the structure equation Rcal_ab = d omega-transposed_ab + quadratic term;
// together with the dual-bivector route for *G^d and its resolved relative
// sign, the closedness residual d(*Tcal^a + *t^a), and the covariant
// closure residual of the dual Einstein forms.
struct SuperpotentialSet {
  std::array<Multivector, 4> starG{};        // direct *(G^a_b theta^b)
  std::array<Multivector, 4> starG_route2{}; // (1/2) R_ab ^ *(theta theta theta)
  int route2_sign = 1;                       // sign making the routes agree
  std::array<Multivector, 4> S{};            // 2-forms S^a
  std::array<Multivector, 4> starS{};        // *S^a
  std::array<Multivector, 4> start{};        // *t^a
  std::array<Multivector, 4> dstarS{};       // d*S^a
  double eq16_residual = 0.0;   // |*G^a + d*S^a + *t^a| max
  double route2_residual = 0.0; // routes for *G^a compared
  double closedness = 0.0;      // |d(*Tcal^a + *t^a)| max
  double covariant_closure = 0.0;  // |theta^c ^ (D_{e_c} *G)^a| max
  double max_start = 0.0;
  double max_starG = 0.0;
};

SuperpotentialSet superpotentials(const TetradField& t,
                                  const EnergyMomentumField& em,
                                  const ChartPoint& p);

// Asymptotic Cartesian charts for the spherically symmetric vacuum of mass m:
// the isotropic-Cartesian chart, and the deformed radial chart obtained from
// the areal radius r via rho = r + m^2 / r (Cartesianized).
TetradField isotropic_cartesian_tetrad(double m);
TetradField deformed_cartesian_tetrad(double m);

// Surface-integral mass: m_i = (-1/16 pi) oint d_beta(g11 g22 g33 g^{al be})
// dsigma_al over coordinate spheres (spatial indices), dsigma_al =
// -R^2 n_al dA, evaluated at R/m in {1e2, 1e3, 1e4} and extrapolated
// linearly in 1/R.  Refuses charts that are not asymptotically Cartesian.
struct MassResult {
  bool ok = false;
  std::string diagnostic;
  std::array<double, 3> radii{};
  std::array<double, 3> rung_values{};
  double extrapolated = 0.0;
  double surface_superpotential = 0.0;  // (1/8pi) oint *S^0, largest radius
  int quadrature_order = 0;
};

MassResult mass_integral(const TetradField& t, double mass_scale);

}  // namespace cbv

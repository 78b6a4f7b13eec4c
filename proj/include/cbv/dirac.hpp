#pragma once

#include <array>
#include <functional>

#include "cbv/chart.hpp"
#include "cbv/einstein.hpp"
#include "cbv/multivector.hpp"

namespace cbv {

// A Clifford-form field in the cotangent-flavored kernel encoding: the value
// is a multivector whose grade-p part carries the lowered frame components of
// a p-form on the basis theta^{a1} ^ ... ^ theta^{ap}.  The optional partial
// provider returns the coordinate partials of the components; when absent it
// is synthesized by central finite differences of value.
struct MultiformField {
  std::function<Multivector(const ChartPoint&)> value;
  std::function<std::array<Multivector, 4>(const ChartPoint&)> partial;
};

MultiformField make_multiform(
    std::function<Multivector(const ChartPoint&)> value,
    double fd_step_scale = 1e-5);

// D_{e_a} A = partial_{e_a} A + (1/2)[Omega_a, A]; grade preserving.
Multivector multiform_covariant_derivative(const MultiformField& A,
                                           const TetradField& t,
                                           const ChartPoint& p, int a);

// Dirac operator and its exterior/interior split:
//   dirac(A)  = theta^a D_{e_a} A (geometric product),
//   d(A)      = theta^a ^ D_{e_a} A,
//   delta(A)  = -theta^a _| D_{e_a} A,
// with dirac = d - delta exactly as a grade decomposition.
Multivector multiform_dirac(const MultiformField& A, const TetradField& t,
                            const ChartPoint& p);
Multivector multiform_d(const MultiformField& A, const TetradField& t,
                        const ChartPoint& p);
Multivector multiform_delta(const MultiformField& A, const TetradField& t,
                            const ChartPoint& p);
// Conjugated route delta = (-1)^p *^{-1} d * on a homogeneous p-form field.
Multivector multiform_delta_star(const MultiformField& A, const TetradField& t,
                                 const ChartPoint& p, int degree);

// Second-order operators evaluated at a point:
//   dirac2      = dirac(dirac A)          (outer derivative by FD),
//   dot         = eta^{ab} (D_a D_b - omega_ab^c D_c) A,
//   wedge       = (theta^a ^ theta^b)(D_a D_b - omega_ab^c D_c) A,
//   hodge_route = -(d delta + delta d) A,
// with dirac2 = dot + wedge = hodge_route.
struct SecondOrderReport {
  Multivector dirac2;
  Multivector dot;
  Multivector wedge;
  Multivector hodge_route;
  Multivector dd;           // d(dA)
  Multivector deltadelta;   // delta(delta A)
  double split_residual = 0.0;  // |dirac2 - dot - wedge|
  double hodge_residual = 0.0;  // |dirac2 - hodge_route|
};

SecondOrderReport multiform_second_order(const MultiformField& A,
                                         const TetradField& t,
                                         const ChartPoint& p);

// The Ricci operator on the tetrad 1-forms: (del ^ del) theta^a, compared
// against the Ricci 1-forms obtained from the curvature contraction.
struct RicciOperatorReport {
  std::array<Multivector, 4> wedge_theta{};  // (del ^ del) theta^a
  std::array<Multivector, 4> ricci_forms{};  // -R^a_b theta^b
  double residual = 0.0;
  double max_value = 0.0;
};

RicciOperatorReport ricci_operator_check(const TetradField& t,
                                         const ChartPoint& p);

// Tetrad wave equation
//   -(del . del) theta^a + d(del . theta^a) + del _| (d theta^a)
//     = -(Tcal^a - (1/2) T theta^a)
// (right side the trace-reversed source 1-forms; the overall minus matches
// the Ricci-operator sign of this curvature normalization), plus the naive
// (box + T) theta^a value that the equation is *not* equivalent to.
struct TetradWaveReport {
  double residual = 0.0;        // wave equation residual, max over a
  double naive_box = 0.0;       // max_a |(del.del + T) theta^a|
  double harmonic = 0.0;        // max_a |delta theta^a| (gauge diagnostic)
};

TetradWaveReport tetrad_wave_residual(const TetradField& t,
                                      const EnergyMomentumField& em,
                                      const ChartPoint& p);

// Maxwell residuals for a grade-2 field F and grade-1 current J:
// dirac F = J splits into dF = 0 and -delta F = J; the dual route checks
// d*F = -*J.
struct MaxwellResiduals {
  double dF = 0.0;
  double deltaF = 0.0;   // |delta F + J|
  double dual = 0.0;     // |d*F + *J|
};

MaxwellResiduals maxwell_residuals(const MultiformField& F,
                                   const MultiformField& J,
                                   const TetradField& t, const ChartPoint& p);

// Wave operator on a grade-1 potential: the kernel route dirac^2 A against
// the covariant-Laplacian-plus-Ricci component form, and the size of the
// Ricci term itself (the obstruction to a bare box equation).
struct PotentialWaveReport {
  double route_residual = 0.0;  // |dirac2 A - (dot A + Ric(A))|
  double ricci_term = 0.0;      // |Ric(A)| = |dirac2 A - dot A|
};

PotentialWaveReport potential_wave_residual(const MultiformField& A,
                                            const TetradField& t,
                                            const ChartPoint& p);

}  // namespace cbv

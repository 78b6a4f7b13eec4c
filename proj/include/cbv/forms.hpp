#pragma once

#include <array>
#include <functional>

#include "cbv/chart.hpp"
#include "cbv/multivector.hpp"

namespace cbv {

// Multivector-valued field with optional analytic derivative closures.
// df[nu] = d_nu f; ddf[sig][nu] = d_sig d_nu f.
struct MvFun {
  std::function<Multivector(const ChartPoint&)> f;
  std::function<std::array<Multivector, 4>(const ChartPoint&)> df;
  std::function<std::array<std::array<Multivector, 4>, 4>(const ChartPoint&)>
      ddf;

  bool has_df() const { return static_cast<bool>(df); }
  bool has_ddf() const { return static_cast<bool>(ddf); }
};

MvFun mv_const(const Multivector& m);
MvFun mv_add(const MvFun& a, const MvFun& b);
MvFun mv_scale(const MvFun& a, double s);
// Clifford product with product-rule derivatives (df/ddf present when both
// operands carry them).
MvFun mv_gp(const MvFun& a, const MvFun& b);

// Clifford-valued p-form over a chart.  Coefficients are stored on the
// 4-bit coordinate-index mask (bit mu set <=> dx^mu present), populated only
// for masks of popcount == degree; the wedge sign convention is the canonical
// ascending order of the mask.
struct CForm {
  int degree = 0;
  std::array<MvFun, 16> c{};

  // coefficient at a strictly increasing tuple encoded as a mask
  const MvFun& at(unsigned mask) const { return c[mask]; }
};

// permutation sign merging two disjoint ascending index sets (no metric)
double merge_sign(unsigned a, unsigned b);

CForm cform_zero(int degree);
CForm cform_add(const CForm& a, const CForm& b);
CForm cform_scale(const CForm& a, double s);
Multivector cform_eval(const CForm& a, unsigned mask, const ChartPoint& p);
double cform_max_abs(const CForm& a, const ChartPoint& p);

// A (x)_wedge B: Clifford product on the fiber, wedge on the form part.
CForm wedge_tensor(const CForm& a, const CForm& b);
// [A,B] = A(x)B - (-1)^{pq} B(x)A
CForm form_commutator(const CForm& a, const CForm& b);
// dA: needs coefficient df; propagates ddf -> df of the result.
CForm exterior_d(const CForm& a);
// DA = dA + c(p)[omega, A] with c(p) = p/2 for p >= 1 and 1/2 for p = 0.
CForm exterior_covariant_D(const CForm& a, const CForm& omega);
// Cartan differential for vector-valued forms: always the 1/2 rule.
CForm cartan_differential(const CForm& a, const CForm& omega);
// Extended derivative along frame vector e_r: partial_{e_r}A + c(p)[Omega_r,A].
CForm extended_covariant_derivative(const CForm& a, const TetradField& t,
                                    int r);
// sum_r theta^r wedge (D_{e_r} A): reassembles exterior_covariant_D.
CForm extended_reassembly(const CForm& a, const TetradField& t);

// Soldering form theta = e_a (x) theta^a (frame-vector valued 1-form) and the
// bivector connection 1-form omega = omega_mu dx^mu.
CForm soldering_form(const TetradField& t);
CForm connection_form(const TetradField& t);

// Torsion 2-form Theta = D theta (vanishes for the Levi-Civita connection).
CForm torsion(const TetradField& t);

struct CurvatureData {
  // curvature bivectors R_{mu nu} (antisymmetric in mu nu)
  std::array<std::array<Multivector, 4>, 4> R{};
  // frame components R^{ab}_{mu nu} extracted from R = (1/2) R^{ab} e_a e_b
  std::array<std::array<Mat4, 4>, 4> frame{};  // [a][b][mu][nu]
  // coordinate mixed components R^alpha_{beta mu nu}
  std::array<Ten3, 4> mixed{};
  // Cartan 2-forms (R^a_b)_{mu nu} = eta_{bc} R^{ac}_{mu nu}
  std::array<std::array<Mat4, 4>, 4> cartan{};  // [a][b][mu][nu]
};

// R_{mu nu} = d_mu omega_nu - d_nu omega_mu + (1/2)[omega_mu, omega_nu]
CurvatureData curvature_at(const TetradField& t, const ChartPoint& p);
// the curvature 2-form as a CForm (coefficient fields only, no derivatives)
CForm curvature_form(const TetradField& t);

double kretschmann_from_bivectors(const TetradField& t, const ChartPoint& p);

// Cyclic Bianchi residual: max norm over rho<mu<nu of
// sum_cyc( d_rho R_{mu nu} + c [omega_rho, R_{mu nu}] ), c = 1/2 (the genuine
// covariant rule; equals the Cartan-differential statement D^c R = 0) or
// c = 1 (the extended-derivative variant, which does not vanish).
// The second-derivative contributions cancel in the cyclic sum and are
// omitted analytically.
double bianchi_residual(const TetradField& t, const ChartPoint& p,
                        bool extended = false);

// max |[D_rho, D_lambda] e_mu - R_{rho lambda} |_ e_mu| over index choices
double holonomy_residual(const TetradField& t, const ChartPoint& p);

// residual of D(DA) - (1/2)[curvature_form, A] for a form with ddf coefficients
double dsquared_residual(const CForm& a, const TetradField& t,
                         const ChartPoint& p);

}  // namespace cbv

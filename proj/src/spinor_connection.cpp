#include "cbv/spinor_connection.hpp"

#include <cmath>
#include <stdexcept>

namespace cbv {

namespace {

// partials of the inverse tetrad: d_s h_a^mu = -h_a^nu (d_s h^b_nu) h_b^mu
Ten3 inverse_tetrad_partials(const Mat4& hi, const Ten3& dh) {
  Ten3 out{};
  for (int s = 0; s < 4; ++s)
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          for (int b = 0; b < 4; ++b)
            v += hi[a][nu] * dh[s][b][nu] * hi[b][mu];
        out[s][a][mu] = -v;
      }
  return out;
}

Multivector sigma_lower(int a) {
  if (a == 0) return Multivector::scalar(1.0);
  return gp(Multivector::basis(a), Multivector::basis(0));
}

Multivector sigma_check(int a) {
  return a == 0 ? Multivector::scalar(-1.0) : sigma_lower(a);
}

}  // namespace

Multivector clifford_dagger(const Multivector& m) {
  return gp(gp(Multivector::basis(0), reverse(m)), Multivector::basis(0));
}

PauliMatrix2 conjugate_transpose(const PauliMatrix2& m) {
  PauliMatrix2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = std::conj(m(c, r));
  return out;
}

Multivector spinor_omega_frame(const TetradField& t, const ChartPoint& p,
                               int a) {
  return spin_connection_frame(t, p)[static_cast<std::size_t>(a)];
}

PauliMatrix2 spinor_omega_matrix(const TetradField& t, const ChartPoint& p,
                                 int a) {
  return to_matrix(PauliNumber(spinor_omega_frame(t, p, a)));
}

Multivector spinor_covariant_derivative(const MvFun& field,
                                        const TetradField& t,
                                        const ChartPoint& p, int nu,
                                        SpinorFlavor flavor) {
  if (!field.has_df())
    throw std::invalid_argument(
        "spinor_covariant_derivative: field lacks df");
  Multivector om = spin_connection_coord(t, p)[static_cast<std::size_t>(nu)];
  Multivector v = field.f(p);
  Multivector dv = field.df(p)[static_cast<std::size_t>(nu)];
  switch (flavor) {
    case SpinorFlavor::undotted:
      return dv + gp(om, v) * 0.5;
    case SpinorFlavor::dotted:
      return dv - gp(v, om) * 0.5;
    case SpinorFlavor::pauli:
      return dv + commutator(om, v) * 0.5;
  }
  return dv;
}

Multivector paravector_q(const TetradField& t, const ChartPoint& p, int mu) {
  Mat4 h = tetrad_at(t, p);
  Multivector q;
  for (int a = 0; a < 4; ++a) q += sigma_lower(a) * h[a][mu];
  return q;
}

Multivector paravector_qcheck(const TetradField& t, const ChartPoint& p,
                              int mu) {
  Mat4 h = tetrad_at(t, p);
  Multivector q;
  for (int a = 0; a < 4; ++a) q += sigma_check(a) * h[a][mu];
  return q;
}

Multivector paravector_q_upper(const TetradField& t, const ChartPoint& p,
                               int mu) {
  // g^{mu nu} h^a_nu = eta^{ab} h_b^mu
  Mat4 hi = inverse_tetrad_at(t, p);
  Multivector q;
  for (int a = 0; a < 4; ++a) q += sigma_lower(a) * (kEta[a] * hi[a][mu]);
  return q;
}

Multivector paravector_qcheck_upper(const TetradField& t, const ChartPoint& p,
                                    int mu) {
  Mat4 hi = inverse_tetrad_at(t, p);
  Multivector q;
  for (int a = 0; a < 4; ++a) q += sigma_check(a) * (kEta[a] * hi[a][mu]);
  return q;
}

Multivector paravector_derivative(const TetradField& t, const ChartPoint& p,
                                  int mu, int nu) {
  Ten3 dh = t.dh(p);
  Multivector dq;
  for (int a = 0; a < 4; ++a) dq += sigma_lower(a) * dh[nu][a][mu];
  Multivector om = spin_connection_coord(t, p)[static_cast<std::size_t>(nu)];
  Multivector q = paravector_q(t, p, mu);
  return dq + gp(om, q) * 0.5 + gp(q, clifford_dagger(om)) * 0.5;
}

double sachs_residual(const TetradField& t, const ChartPoint& p) {
  Ten3 gam = christoffels(t, p);
  double worst = 0.0;
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu) {
      Multivector res = paravector_derivative(t, p, mu, nu);
      for (int al = 0; al < 4; ++al)
        res -= paravector_q(t, p, al) * gam[al][nu][mu];
      worst = std::max(worst, max_abs(res));
    }
  return worst;
}

QDecomposition q_tensor_decomposition(const TetradField& t,
                                      const ChartPoint& p) {
  QDecomposition out;
  std::array<Multivector, 4> q, qc;
  for (int mu = 0; mu < 4; ++mu) {
    q[mu] = paravector_q(t, p, mu);
    qc[mu] = paravector_qcheck(t, p, mu);
  }
  Multivector i4 = Multivector::pseudoscalar();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Multivector sym = (gp(q[mu], qc[nu]) + gp(q[nu], qc[mu])) * 0.5;
      out.metric_part[mu][nu] = sym[0];
      sym[0] = 0.0;
      out.symmetric_offdiagonal =
          std::max(out.symmetric_offdiagonal, max_abs(sym));
      Multivector anti = (gp(q[mu], qc[nu]) - gp(q[nu], qc[mu])) * 0.5;
      for (int k = 1; k <= 3; ++k) {
        Multivector isk = gp(i4, sigma(k));
        double coef = scalar_product(isk, anti) / scalar_product(isk, isk);
        out.fprime[k - 1][mu][nu] = coef;
        anti -= isk * coef;
      }
      out.antisymmetric_sigma =
          std::max(out.antisymmetric_sigma, max_abs(anti));
    }
  return out;
}

InertialReport inertial_constraint_check(const TetradField& t,
                                         const ChartPoint& p) {
  InertialReport out;
  auto om = spin_connection_coord(t, p);
  Mat4 hi = inverse_tetrad_at(t, p);
  // D_{e_nu} e_a = (1/2)[omega_nu, e_a]
  std::array<std::array<Multivector, 4>, 4> de;  // [nu][a]
  for (int nu = 0; nu < 4; ++nu)
    for (int a = 0; a < 4; ++a)
      de[nu][a] = commutator(om[nu], Multivector::basis(a)) * 0.5;
  for (int nu = 0; nu < 4; ++nu)
    out.de0_max = std::max(out.de0_max, max_abs(de[nu][0]));
  // frame-direction derivative along e_0
  for (int a = 0; a < 4; ++a) {
    Multivector d;
    for (int nu = 0; nu < 4; ++nu) d += de[nu][a] * hi[0][nu];
    if (a == 0)
      out.geodesic = max_abs(d);
    else
      out.fermi = std::max(out.fermi, max_abs(d));
  }
  // Ricci row Ric(e_0, e_b) from the coordinate Riemann tensor
  CurvatureData cd = curvature_at(t, p);
  Mat4 ricci{};
  for (int be = 0; be < 4; ++be)
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int al = 0; al < 4; ++al) s += cd.mixed[al][be][al][nu];
      ricci[be][nu] = s;
    }
  for (int b = 0; b < 4; ++b) {
    double s = 0.0;
    for (int be = 0; be < 4; ++be)
      for (int nu = 0; nu < 4; ++nu)
        s += hi[0][be] * hi[b][nu] * ricci[be][nu];
    out.ric_e0_max = std::max(out.ric_e0_max, std::abs(s));
  }
  out.teleparallel = max_abs(connection_coeffs(t, p)) < 1e-10;
  return out;
}

namespace {

double pauli_constraint_worker(const TetradField& t, const ChartPoint& p,
                               bool only_frame0) {
  auto omc = spin_connection_coord(t, p);
  Mat4 hi = inverse_tetrad_at(t, p);
  std::array<Multivector, 4> om;  // derivative slots
  int n = only_frame0 ? 1 : 4;
  for (int s = 0; s < n; ++s) {
    om[s] = Multivector{};
    if (only_frame0) {
      for (int nu = 0; nu < 4; ++nu) om[s] += omc[nu] * hi[0][nu];
    } else {
      om[s] = omc[s];
    }
  }
  double worst = 0.0;
  Multivector e0 = Multivector::basis(0);
  for (int s = 0; s < n; ++s)
    for (int i = 1; i <= 3; ++i) {
      Multivector ei = Multivector::basis(i);
      Multivector lhs = commutator(om[s], ei) * 0.5;
      Multivector de0 = commutator(om[s], e0) * 0.5;
      Multivector rhs = gp(gp(ei, de0), e0);
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  return worst;
}

}  // namespace

double pauli_constraint_residual(const TetradField& t, const ChartPoint& p) {
  return pauli_constraint_worker(t, p, false);
}

double pauli_constraint_residual_frame0(const TetradField& t,
                                        const ChartPoint& p) {
  return pauli_constraint_worker(t, p, true);
}

double gamma_identity_residual_with(const TetradField& t, const ChartPoint& p,
                                    const std::array<Multivector, 4>& omega) {
  Ten3 w = connection_coeffs(t, p);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Multivector eb = Multivector::basis(b);
      Multivector res = gp(omega[a], eb) * (-0.5) + gp(eb, omega[a]) * 0.5;
      for (int c = 0; c < 4; ++c) res += Multivector::basis(c) * w[a][b][c];
      worst = std::max(worst, max_abs(res));
    }
  return worst;
}

double gamma_identity_residual(const TetradField& t, const ChartPoint& p) {
  return gamma_identity_residual_with(t, p, spin_connection_frame(t, p));
}

ContractionReport paravector_contractions(const TetradField& t,
                                          const ChartPoint& p) {
  ContractionReport out;
  std::array<Multivector, 4> qup, qcheck;
  for (int mu = 0; mu < 4; ++mu) {
    qup[mu] = paravector_q_upper(t, p, mu);
    qcheck[mu] = paravector_qcheck(t, p, mu);
  }
  Multivector trace;
  for (int mu = 0; mu < 4; ++mu) trace += gp(qup[mu], qcheck[mu]);
  out.qqcheck = max_abs(trace + Multivector::scalar(4.0));

  auto om = spin_connection_coord(t, p);
  for (int rho = 0; rho < 4; ++rho) {
    Multivector mid;
    for (int mu = 0; mu < 4; ++mu)
      mid += gp(qup[mu], gp(om[rho], qcheck[mu]));
    out.q_omega_q = std::max(out.q_omega_q, max_abs(mid));
  }

  // rebuild omega_rho = (1/2)(d_rho q^mu + Gamma^mu_{rho tau} q^tau) qcheck_mu
  Mat4 hi = inverse_tetrad_at(t, p);
  Ten3 dhi = inverse_tetrad_partials(hi, t.dh(p));
  Ten3 gam = christoffels(t, p);
  for (int rho = 0; rho < 4; ++rho) {
    Multivector rebuilt;
    for (int mu = 0; mu < 4; ++mu) {
      Multivector inner;
      for (int a = 0; a < 4; ++a)
        inner += sigma_lower(a) * (kEta[a] * dhi[rho][a][mu]);
      for (int tau = 0; tau < 4; ++tau)
        inner += qup[tau] * gam[mu][rho][tau];
      rebuilt += gp(inner, qcheck[mu]) * 0.5;
    }
    out.omega_rebuild =
        std::max(out.omega_rebuild, max_abs(rebuilt - om[rho]));
  }
  return out;
}

}  // namespace cbv

#include "cbv/dirac.hpp"

#include <cmath>

#include "cbv/forms.hpp"

namespace cbv {
namespace {

Multivector theta_upper(int a) { return Multivector::basis(a) * kEta[a]; }

std::array<Multivector, 4> fd_partials_of(
    const std::function<Multivector(const ChartPoint&)>& f,
    const ChartPoint& p, double scale) {
  std::array<Multivector, 4> d{};
  for (int mu = 0; mu < 4; ++mu) {
    double h = scale * (1.0 + std::abs(p[mu]));
    ChartPoint pp = p, pm = p;
    pp[mu] += h;
    pm[mu] -= h;
    d[mu] = (f(pp) - f(pm)) * (0.5 / h);
  }
  return d;
}

// field whose value is the frame covariant derivative of A along e_b,
// partials synthesized by finite differences (used for second derivatives)
MultiformField derivative_field(const MultiformField& A, const TetradField& t,
                                int b) {
  MultiformField B;
  B.value = [&A, &t, b](const ChartPoint& q) {
    return multiform_covariant_derivative(A, t, q, b);
  };
  B.partial = [&A, &t, b](const ChartPoint& q) {
    return fd_partials_of(
        [&](const ChartPoint& r) {
          return multiform_covariant_derivative(A, t, r, b);
        },
        q, 1e-5);
  };
  return B;
}

}  // namespace

MultiformField make_multiform(
    std::function<Multivector(const ChartPoint&)> value,
    double fd_step_scale) {
  MultiformField A;
  A.value = value;
  A.partial = [value, fd_step_scale](const ChartPoint& q) {
    return fd_partials_of(value, q, fd_step_scale);
  };
  return A;
}

Multivector multiform_covariant_derivative(const MultiformField& A,
                                           const TetradField& t,
                                           const ChartPoint& p, int a) {
  Mat4 hi = inverse_tetrad_at(t, p);
  auto Om = spin_connection_frame(t, p);
  auto dA = A.partial(p);
  Multivector out = commutator(Om[a], A.value(p)) * 0.5;
  for (int mu = 0; mu < 4; ++mu) out += dA[mu] * hi[a][mu];
  return out;
}

Multivector multiform_dirac(const MultiformField& A, const TetradField& t,
                            const ChartPoint& p) {
  Multivector out;
  for (int a = 0; a < 4; ++a)
    out += gp(theta_upper(a), multiform_covariant_derivative(A, t, p, a));
  return out;
}

Multivector multiform_d(const MultiformField& A, const TetradField& t,
                        const ChartPoint& p) {
  Multivector out;
  for (int a = 0; a < 4; ++a)
    out += outer(theta_upper(a), multiform_covariant_derivative(A, t, p, a));
  return out;
}

Multivector multiform_delta(const MultiformField& A, const TetradField& t,
                            const ChartPoint& p) {
  Multivector out;
  for (int a = 0; a < 4; ++a)
    out -= left_contract(theta_upper(a),
                         multiform_covariant_derivative(A, t, p, a));
  return out;
}

Multivector multiform_delta_star(const MultiformField& A, const TetradField& t,
                                 const ChartPoint& p, int degree) {
  MultiformField SA;
  SA.value = [&A](const ChartPoint& q) { return hodge_star(A.value(q)); };
  SA.partial = [&A](const ChartPoint& q) {
    auto d = A.partial(q);
    std::array<Multivector, 4> out{};
    for (int mu = 0; mu < 4; ++mu) out[mu] = hodge_star(d[mu]);
    return out;
  };
  Multivector dSA = multiform_d(SA, t, p);
  double sign = (degree % 2 == 0) ? 1.0 : -1.0;
  return hodge_star_inverse(dSA) * sign;
}

SecondOrderReport multiform_second_order(const MultiformField& A,
                                         const TetradField& t,
                                         const ChartPoint& p) {
  SecondOrderReport out;
  Ten3 cc = connection_coeffs(t, p);

  // first-derivative fields D_b A with FD partials
  std::array<MultiformField, 4> DB{};
  for (int b = 0; b < 4; ++b) DB[b] = derivative_field(A, t, b);
  std::array<Multivector, 4> D1{};
  for (int b = 0; b < 4; ++b) D1[b] = DB[b].value(p);
  std::array<std::array<Multivector, 4>, 4> D2{};  // D_a D_b A
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      D2[a][b] = multiform_covariant_derivative(DB[b], t, p, a);

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Multivector bracket = D2[a][b];
      for (int c = 0; c < 4; ++c) bracket -= D1[c] * cc[a][b][c];
      if (a == b) out.dot += bracket * kEta[a];
      out.wedge += gp(outer(theta_upper(a), theta_upper(b)), bracket);
    }

  // full Dirac square through the composed operator
  MultiformField DA;
  DA.value = [&A, &t](const ChartPoint& q) { return multiform_dirac(A, t, q); };
  DA.partial = [&A, &t](const ChartPoint& q) {
    return fd_partials_of(
        [&](const ChartPoint& r) { return multiform_dirac(A, t, r); }, q,
        1e-5);
  };
  out.dirac2 = multiform_dirac(DA, t, p);

  // Hodge route -(d delta + delta d)
  MultiformField dA;
  dA.value = [&A, &t](const ChartPoint& q) { return multiform_d(A, t, q); };
  dA.partial = [&A, &t](const ChartPoint& q) {
    return fd_partials_of(
        [&](const ChartPoint& r) { return multiform_d(A, t, r); }, q, 1e-5);
  };
  MultiformField deltaA;
  deltaA.value = [&A, &t](const ChartPoint& q) {
    return multiform_delta(A, t, q);
  };
  deltaA.partial = [&A, &t](const ChartPoint& q) {
    return fd_partials_of(
        [&](const ChartPoint& r) { return multiform_delta(A, t, r); }, q,
        1e-5);
  };
  out.hodge_route =
      (multiform_d(deltaA, t, p) + multiform_delta(dA, t, p)) * (-1.0);
  out.dd = multiform_d(dA, t, p);
  out.deltadelta = multiform_delta(deltaA, t, p);

  out.split_residual = max_abs(out.dirac2 - out.dot - out.wedge);
  out.hodge_residual = max_abs(out.dirac2 - out.hodge_route);
  return out;
}

RicciOperatorReport ricci_operator_check(const TetradField& t,
                                         const ChartPoint& p) {
  RicciOperatorReport out;
  RicciEinstein re = ricci_and_einstein(t, p);
  for (int a = 0; a < 4; ++a) {
    MultiformField th;
    th.value = [a](const ChartPoint&) { return theta_upper(a); };
    th.partial = [](const ChartPoint&) {
      return std::array<Multivector, 4>{};
    };
    auto so = multiform_second_order(th, t, p);
    out.wedge_theta[a] = so.wedge;
    // -R^a_b theta^b: with the curvature normalization used here the Ricci
    // operator carries a minus against the contracted Ricci tensor (the same
    // systematic flip as the holonomy contraction)
    Multivector rf;
    for (int b = 0; b < 4; ++b)
      rf -= theta_upper(b) * (kEta[a] * re.ricci[a][b]);
    out.ricci_forms[a] = rf;
    out.residual = std::max(out.residual, max_abs(so.wedge - rf));
    out.max_value = std::max(out.max_value, max_abs(so.wedge));
  }
  return out;
}

TetradWaveReport tetrad_wave_residual(const TetradField& t,
                                      const EnergyMomentumField& em,
                                      const ChartPoint& p) {
  TetradWaveReport out;
  Mat4 Tf = energy_momentum_frame(em, t, p);
  double trT = 0.0;
  for (int a = 0; a < 4; ++a) trT += kEta[a] * Tf[a][a];
  for (int a = 0; a < 4; ++a) {
    MultiformField th;
    th.value = [a](const ChartPoint&) { return theta_upper(a); };
    th.partial = [](const ChartPoint&) {
      return std::array<Multivector, 4>{};
    };
    auto so = multiform_second_order(th, t, p);
    // d(del . theta^a): exterior derivative of the scalar -delta theta^a
    MultiformField dotth;
    dotth.value = [a, &t](const ChartPoint& q) {
      MultiformField th2;
      th2.value = [a](const ChartPoint&) { return theta_upper(a); };
      th2.partial = [](const ChartPoint&) {
        return std::array<Multivector, 4>{};
      };
      return multiform_delta(th2, t, q) * (-1.0);
    };
    dotth.partial = [&dotth](const ChartPoint& q) {
      return fd_partials_of(dotth.value, q, 1e-5);
    };
    Multivector term2 = multiform_d(dotth, t, p);
    // del _| (d theta^a): -delta applied to the 2-form d theta^a
    MultiformField dth;
    dth.value = [a, &t](const ChartPoint& q) {
      MultiformField th2;
      th2.value = [a](const ChartPoint&) { return theta_upper(a); };
      th2.partial = [](const ChartPoint&) {
        return std::array<Multivector, 4>{};
      };
      return multiform_d(th2, t, q);
    };
    dth.partial = [&dth](const ChartPoint& q) {
      return fd_partials_of(dth.value, q, 1e-5);
    };
    Multivector term3 = multiform_delta(dth, t, p) * (-1.0);
    // trace-reversed source -(Tcal^a - (1/2) T theta^a): the left side equals
    // the Ricci operator, which carries a minus against R^a_b theta^b here
    Multivector rhs = theta_upper(a) * (0.5 * trT);
    for (int b = 0; b < 4; ++b)
      rhs -= theta_upper(b) * (kEta[a] * Tf[a][b]);
    Multivector lhs = so.dot * (-1.0) + term2 + term3;
    out.residual = std::max(out.residual, max_abs(lhs - rhs));
    // naive (box + T) theta^a
    out.naive_box =
        std::max(out.naive_box, max_abs(so.dot + theta_upper(a) * trT));
    MultiformField th3;
    th3.value = [a](const ChartPoint&) { return theta_upper(a); };
    th3.partial = [](const ChartPoint&) {
      return std::array<Multivector, 4>{};
    };
    out.harmonic = std::max(out.harmonic, max_abs(multiform_delta(th3, t, p)));
  }
  return out;
}

MaxwellResiduals maxwell_residuals(const MultiformField& F,
                                   const MultiformField& J,
                                   const TetradField& t, const ChartPoint& p) {
  MaxwellResiduals out;
  Multivector dF = multiform_d(F, t, p);
  Multivector del = multiform_delta(F, t, p);
  Multivector Jv = J.value(p);
  out.dF = max_abs(dF);
  out.deltaF = max_abs(del + Jv);
  // dual route d*F = -*J
  MultiformField SF;
  SF.value = [&F](const ChartPoint& q) { return hodge_star(F.value(q)); };
  SF.partial = [&F](const ChartPoint& q) {
    auto d = F.partial(q);
    std::array<Multivector, 4> o{};
    for (int mu = 0; mu < 4; ++mu) o[mu] = hodge_star(d[mu]);
    return o;
  };
  out.dual = max_abs(multiform_d(SF, t, p) + hodge_star(Jv));
  return out;
}

PotentialWaveReport potential_wave_residual(const MultiformField& A,
                                            const TetradField& t,
                                            const ChartPoint& p) {
  PotentialWaveReport out;
  auto so = multiform_second_order(A, t, p);
  RicciEinstein re = ricci_and_einstein(t, p);
  // Ric(A) = R^a_b A^b theta_a contraction on the grade-1 components
  Multivector Av = A.value(p);
  Multivector ric;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double Ab = Av[1u << b] * kEta[b];  // lowered component on theta^b
      ric += theta_upper(a) * (kEta[b] * re.ricci[b][a] * Ab);
    }
  out.route_residual = max_abs(so.dirac2 - so.dot - so.wedge);
  out.ricci_term = max_abs(so.wedge);
  // on grade-1 potentials the wedge part is minus the Ricci contraction
  out.route_residual =
      std::max(out.route_residual, max_abs(so.wedge + ric));
  return out;
}

}  // namespace cbv

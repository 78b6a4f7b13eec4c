#include "cbv/forms.hpp"

#include <bit>
#include <memory>
#include <stdexcept>

namespace cbv {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

double covariant_factor(int degree) {
  return degree == 0 ? 0.5 : 0.5 * static_cast<double>(degree);
}

}  // namespace

MvFun mv_const(const Multivector& m) {
  MvFun out;
  out.f = [m](const ChartPoint&) { return m; };
  out.df = [](const ChartPoint&) { return std::array<Multivector, 4>{}; };
  out.ddf = [](const ChartPoint&) {
    return std::array<std::array<Multivector, 4>, 4>{};
  };
  return out;
}

// Combinators capture operands behind shared_ptr so nested expression trees
// form a shared DAG; copying a composed MvFun stays cheap.
MvFun mv_add(const MvFun& a, const MvFun& b) {
  MvFun out;
  if (!a.f) return b;
  if (!b.f) return a;
  auto pa = std::make_shared<MvFun>(a);
  auto pb = std::make_shared<MvFun>(b);
  out.f = [pa, pb](const ChartPoint& p) { return pa->f(p) + pb->f(p); };
  if (a.has_df() && b.has_df())
    out.df = [pa, pb](const ChartPoint& p) {
      auto da = pa->df(p), db = pb->df(p);
      for (int nu = 0; nu < 4; ++nu) da[nu] += db[nu];
      return da;
    };
  if (a.has_ddf() && b.has_ddf())
    out.ddf = [pa, pb](const ChartPoint& p) {
      auto da = pa->ddf(p), db = pb->ddf(p);
      for (int s = 0; s < 4; ++s)
        for (int nu = 0; nu < 4; ++nu) da[s][nu] += db[s][nu];
      return da;
    };
  return out;
}

MvFun mv_scale(const MvFun& a, double s) {
  MvFun out;
  if (!a.f) return out;
  auto pa = std::make_shared<MvFun>(a);
  out.f = [pa, s](const ChartPoint& p) { return pa->f(p) * s; };
  if (a.has_df())
    out.df = [pa, s](const ChartPoint& p) {
      auto da = pa->df(p);
      for (int nu = 0; nu < 4; ++nu) da[nu] *= s;
      return da;
    };
  if (a.has_ddf())
    out.ddf = [pa, s](const ChartPoint& p) {
      auto da = pa->ddf(p);
      for (int t = 0; t < 4; ++t)
        for (int nu = 0; nu < 4; ++nu) da[t][nu] *= s;
      return da;
    };
  return out;
}

MvFun mv_gp(const MvFun& a, const MvFun& b) {
  MvFun out;
  if (!a.f || !b.f) return out;
  auto pa = std::make_shared<MvFun>(a);
  auto pb = std::make_shared<MvFun>(b);
  out.f = [pa, pb](const ChartPoint& p) { return gp(pa->f(p), pb->f(p)); };
  if (a.has_df() && b.has_df())
    out.df = [pa, pb](const ChartPoint& p) {
      Multivector va = pa->f(p), vb = pb->f(p);
      auto da = pa->df(p), db = pb->df(p);
      std::array<Multivector, 4> d;
      for (int nu = 0; nu < 4; ++nu)
        d[nu] = gp(da[nu], vb) + gp(va, db[nu]);
      return d;
    };
  if (a.has_df() && b.has_df() && a.has_ddf() && b.has_ddf())
    out.ddf = [pa, pb](const ChartPoint& p) {
      Multivector va = pa->f(p), vb = pb->f(p);
      auto da = pa->df(p), db = pb->df(p);
      auto dda = pa->ddf(p), ddb = pb->ddf(p);
      std::array<std::array<Multivector, 4>, 4> d;
      for (int s = 0; s < 4; ++s)
        for (int nu = 0; nu < 4; ++nu)
          d[s][nu] = gp(dda[s][nu], vb) + gp(da[nu], db[s]) +
                     gp(da[s], db[nu]) + gp(va, ddb[s][nu]);
      return d;
    };
  return out;
}

double merge_sign(unsigned a, unsigned b) {
  int inversions = 0;
  for (int j = 0; j < 4; ++j)
    if (b & (1u << j)) inversions += popcount(a >> (j + 1));
  return (inversions % 2 == 0) ? 1.0 : -1.0;
}

CForm cform_zero(int degree) {
  CForm out;
  out.degree = degree;
  return out;
}

CForm cform_add(const CForm& a, const CForm& b) {
  if (a.degree != b.degree)
    throw std::invalid_argument("cform_add: degree mismatch");
  CForm out;
  out.degree = a.degree;
  for (unsigned m = 0; m < 16; ++m) out.c[m] = mv_add(a.c[m], b.c[m]);
  return out;
}

CForm cform_scale(const CForm& a, double s) {
  CForm out;
  out.degree = a.degree;
  for (unsigned m = 0; m < 16; ++m) out.c[m] = mv_scale(a.c[m], s);
  return out;
}

Multivector cform_eval(const CForm& a, unsigned mask, const ChartPoint& p) {
  if (!a.c[mask].f) return Multivector{};
  return a.c[mask].f(p);
}

double cform_max_abs(const CForm& a, const ChartPoint& p) {
  double m = 0.0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (popcount(mask) != a.degree || !a.c[mask].f) continue;
    m = std::max(m, max_abs(a.c[mask].f(p)));
  }
  return m;
}

CForm wedge_tensor(const CForm& a, const CForm& b) {
  CForm out;
  out.degree = a.degree + b.degree;
  if (out.degree > 4) return cform_zero(4);  // identically zero past top degree
  for (unsigned s = 0; s < 16; ++s) {
    if (popcount(s) != a.degree || !a.c[s].f) continue;
    for (unsigned t = 0; t < 16; ++t) {
      if (popcount(t) != b.degree || !b.c[t].f) continue;
      if (s & t) continue;
      MvFun term = mv_scale(mv_gp(a.c[s], b.c[t]), merge_sign(s, t));
      out.c[s | t] = mv_add(out.c[s | t], term);
    }
  }
  return out;
}

CForm form_commutator(const CForm& a, const CForm& b) {
  double sign = (a.degree * b.degree) % 2 == 0 ? -1.0 : 1.0;
  return cform_add(wedge_tensor(a, b), cform_scale(wedge_tensor(b, a), sign));
}

CForm exterior_d(const CForm& a) {
  CForm out;
  out.degree = a.degree + 1;
  if (out.degree > 4) return cform_zero(4);
  for (unsigned t = 0; t < 16; ++t) {
    if (popcount(t) != a.degree || !a.c[t].f) continue;
    auto coef = std::make_shared<MvFun>(a.c[t]);
    if (!coef->has_df())
      throw std::invalid_argument("exterior_d: coefficient lacks df");
    for (int mu = 0; mu < 4; ++mu) {
      unsigned bit = 1u << mu;
      if (t & bit) continue;
      double sgn = merge_sign(bit, t);
      MvFun term;
      term.f = [coef, mu, sgn](const ChartPoint& p) {
        return coef->df(p)[mu] * sgn;
      };
      if (coef->has_ddf())
        term.df = [coef, mu, sgn](const ChartPoint& p) {
          auto dd = coef->ddf(p);
          std::array<Multivector, 4> d;
          for (int nu = 0; nu < 4; ++nu) d[nu] = dd[nu][mu] * sgn;
          return d;
        };
      out.c[bit | t] = mv_add(out.c[bit | t], term);
    }
  }
  return out;
}

CForm exterior_covariant_D(const CForm& a, const CForm& omega) {
  double c = covariant_factor(a.degree);
  return cform_add(exterior_d(a), cform_scale(form_commutator(omega, a), c));
}

CForm cartan_differential(const CForm& a, const CForm& omega) {
  return cform_add(exterior_d(a), cform_scale(form_commutator(omega, a), 0.5));
}

CForm extended_covariant_derivative(const CForm& a, const TetradField& t,
                                    int r) {
  CForm out;
  out.degree = a.degree;
  double c = covariant_factor(a.degree);
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (popcount(mask) != a.degree || !a.c[mask].f) continue;
    auto coef = std::make_shared<MvFun>(a.c[mask]);
    if (!coef->has_df())
      throw std::invalid_argument(
          "extended_covariant_derivative: coefficient lacks df");
    MvFun term;
    term.f = [coef, t, r, c](const ChartPoint& p) {
      Mat4 hi = inverse_tetrad_at(t, p);
      auto omf = spin_connection_frame(t, p);
      auto d = coef->df(p);
      Multivector dir;
      for (int mu = 0; mu < 4; ++mu) dir += d[mu] * hi[r][mu];
      return dir + commutator(omf[r], coef->f(p)) * c;
    };
    out.c[mask] = mv_add(out.c[mask], term);
  }
  return out;
}

CForm extended_reassembly(const CForm& a, const TetradField& t) {
  CForm out = cform_zero(a.degree + 1);
  for (int r = 0; r < 4; ++r) {
    CForm theta_r;  // scalar-valued 1-form theta^r = h^r_mu dx^mu
    theta_r.degree = 1;
    for (int mu = 0; mu < 4; ++mu) {
      MvFun coef;
      coef.f = [t, r, mu](const ChartPoint& p) {
        return Multivector::scalar(tetrad_at(t, p)[r][mu]);
      };
      theta_r.c[1u << mu] = coef;
    }
    out = cform_add(
        out, wedge_tensor(theta_r, extended_covariant_derivative(a, t, r)));
  }
  return out;
}

CForm soldering_form(const TetradField& t) {
  CForm out;
  out.degree = 1;
  for (int mu = 0; mu < 4; ++mu) {
    MvFun coef;
    coef.f = [t, mu](const ChartPoint& p) {
      Mat4 h = tetrad_at(t, p);
      Multivector v;
      for (int a = 0; a < 4; ++a) v += Multivector::basis(a) * h[a][mu];
      return v;
    };
    coef.df = [t, mu](const ChartPoint& p) {
      Ten3 dh = t.dh(p);
      std::array<Multivector, 4> d;
      for (int nu = 0; nu < 4; ++nu)
        for (int a = 0; a < 4; ++a)
          d[nu] += Multivector::basis(a) * dh[nu][a][mu];
      return d;
    };
    coef.ddf = [t, mu](const ChartPoint& p) {
      Ten4 ddh = t.ddh(p);
      std::array<std::array<Multivector, 4>, 4> d;
      for (int s = 0; s < 4; ++s)
        for (int nu = 0; nu < 4; ++nu)
          for (int a = 0; a < 4; ++a)
            d[s][nu] += Multivector::basis(a) * ddh[s][nu][a][mu];
      return d;
    };
    out.c[1u << mu] = coef;
  }
  return out;
}

CForm connection_form(const TetradField& t) {
  CForm out;
  out.degree = 1;
  for (int mu = 0; mu < 4; ++mu) {
    MvFun coef;
    coef.f = [t, mu](const ChartPoint& p) {
      return spin_connection_coord(t, p)[mu];
    };
    coef.df = [t, mu](const ChartPoint& p) {
      auto dom = spin_connection_coord_partials(t, p);
      std::array<Multivector, 4> d;
      for (int nu = 0; nu < 4; ++nu) d[nu] = dom[nu][mu];
      return d;
    };
    out.c[1u << mu] = coef;
  }
  return out;
}

CForm torsion(const TetradField& t) {
  return exterior_covariant_D(soldering_form(t), connection_form(t));
}

CurvatureData curvature_at(const TetradField& t, const ChartPoint& p) {
  CurvatureData out;
  auto om = spin_connection_coord(t, p);
  auto dom = spin_connection_coord_partials(t, p);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out.R[mu][nu] =
          dom[mu][nu] - dom[nu][mu] + commutator(om[mu], om[nu]) * 0.5;

  // frame components: R = sum_{a<b} R^{ab} e_a e_b, blade coefficient read
  // off directly; metric factors undo the blade normalization.
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) {
            out.frame[a][b][mu][nu] = 0.0;
            continue;
          }
          unsigned mask = (1u << a) | (1u << b);
          double coef = out.R[mu][nu][mask];
          out.frame[a][b][mu][nu] = (a < b) ? coef : -coef;
        }

  Mat4 h = tetrad_at(t, p);
  Mat4 hi = inverse_tetrad_at(t, p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          out.cartan[a][b][mu][nu] = kEta[b] * out.frame[a][b][mu][nu];

  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double s = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              s += hi[a][al] * kEta[b] * h[b][be] * out.frame[a][b][mu][nu];
          out.mixed[al][be][mu][nu] = s;
        }
  return out;
}

CForm curvature_form(const TetradField& t) {
  CForm out;
  out.degree = 2;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      MvFun coef;
      coef.f = [t, mu, nu](const ChartPoint& p) {
        auto om = spin_connection_coord(t, p);
        auto dom = spin_connection_coord_partials(t, p);
        return dom[mu][nu] - dom[nu][mu] + commutator(om[mu], om[nu]) * 0.5;
      };
      out.c[(1u << mu) | (1u << nu)] = coef;
    }
  return out;
}

double kretschmann_from_bivectors(const TetradField& t, const ChartPoint& p) {
  CurvatureData cd = curvature_at(t, p);
  Mat4 g = metric_from_tetrad(t, p);
  Mat4 gi = inverse_metric(t, p);
  // lower the first index, then raise all four, contract
  Ten4 down{};
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double s = 0.0;
          for (int si = 0; si < 4; ++si)
            s += g[al][si] * cd.mixed[si][be][mu][nu];
          down[al][be][mu][nu] = s;
        }
  double k = 0.0;
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double up = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                  up += gi[al][a] * gi[be][b] * gi[mu][m] * gi[nu][n] *
                        down[a][b][m][n];
          k += down[al][be][mu][nu] * up;
        }
  return k;
}

double bianchi_residual(const TetradField& t, const ChartPoint& p,
                        bool extended) {
  auto om = spin_connection_coord(t, p);
  auto dom = spin_connection_coord_partials(t, p);
  CurvatureData cd = curvature_at(t, p);
  double c = extended ? 1.0 : 0.5;
  double worst = 0.0;
  for (int rho = 0; rho < 4; ++rho)
    for (int mu = rho + 1; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        std::array<std::array<int, 3>, 3> cyc{
            {{rho, mu, nu}, {mu, nu, rho}, {nu, rho, mu}}};
        Multivector res;
        for (const auto& idx : cyc) {
          int r = idx[0], m = idx[1], n = idx[2];
          // d_r R_{mn} with the symmetric dd-omega part dropped (it cancels
          // in the cyclic sum), plus the connection term
          res += commutator(dom[r][m], om[n]) * 0.5;
          res += commutator(om[m], dom[r][n]) * 0.5;
          res += commutator(om[r], cd.R[m][n]) * c;
        }
        worst = std::max(worst, max_abs(res));
      }
  return worst;
}

double holonomy_residual(const TetradField& t, const ChartPoint& p) {
  auto om = spin_connection_coord(t, p);
  auto dom = spin_connection_coord_partials(t, p);
  CurvatureData cd = curvature_at(t, p);
  Mat4 h = tetrad_at(t, p);
  Ten3 dh = t.dh(p);
  Ten4 ddh = t.ddh(p);

  // coordinate frame vectors e_mu = h^a_mu e_a and their partials
  auto evec = [&](int mu) {
    Multivector v;
    for (int a = 0; a < 4; ++a) v += Multivector::basis(a) * h[a][mu];
    return v;
  };
  auto devec = [&](int nu, int mu) {
    Multivector v;
    for (int a = 0; a < 4; ++a) v += Multivector::basis(a) * dh[nu][a][mu];
    return v;
  };
  auto ddevec = [&](int s, int nu, int mu) {
    Multivector v;
    for (int a = 0; a < 4; ++a) v += Multivector::basis(a) * ddh[s][nu][a][mu];
    return v;
  };

  double worst = 0.0;
  for (int rho = 0; rho < 4; ++rho)
    for (int lam = rho + 1; lam < 4; ++lam)
      for (int mu = 0; mu < 4; ++mu) {
        // V = D_lam e_mu and its rho-partial, then the commutator of
        // covariant derivatives assembled without shortcuts
        auto V = [&](int l, int m) {
          return devec(l, m) + commutator(om[l], evec(m)) * 0.5;
        };
        auto dV = [&](int r, int l, int m) {
          return ddevec(r, l, m) + commutator(dom[r][l], evec(m)) * 0.5 +
                 commutator(om[l], devec(r, m)) * 0.5;
        };
        Multivector lhs =
            dV(rho, lam, mu) + commutator(om[rho], V(lam, mu)) * 0.5 -
            (dV(lam, rho, mu) + commutator(om[lam], V(rho, mu)) * 0.5);
        Multivector rhs = right_contract(cd.R[rho][lam], evec(mu));
        worst = std::max(worst, max_abs(lhs - rhs));
      }
  return worst;
}

double dsquared_residual(const CForm& a, const TetradField& t,
                         const ChartPoint& p) {
  CForm omega = connection_form(t);
  CForm dd = cartan_differential(cartan_differential(a, omega), omega);
  CForm expect = cform_scale(form_commutator(curvature_form(t), a), 0.5);
  double worst = 0.0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (popcount(mask) != dd.degree) continue;
    worst = std::max(
        worst, max_abs(cform_eval(dd, mask, p) - cform_eval(expect, mask, p)));
  }
  return worst;
}

}  // namespace cbv

#include "cbv/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace cbv {

namespace {

Mat4 identity_mat() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

// Derivative of the inverse-tetrad components:
// d_sig h_a^mu = - h_a^nu (d_sig h^b_nu) h_b^mu.
Ten3 inverse_partials(const Mat4& Hi, const Ten3& dH) {
  Ten3 dHi{};
  for (int s = 0; s < 4; ++s)
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          for (int b = 0; b < 4; ++b)
            v -= Hi[a][nu] * dH[s][b][nu] * Hi[b][mu];
        dHi[s][a][mu] = v;
      }
  return dHi;
}

Ten4 inverse_second_partials(const Mat4& Hi, const Ten3& dH, const Ten4& ddH,
                             const Ten3& dHi) {
  Ten4 ddHi{};
  for (int t = 0; t < 4; ++t)
    for (int s = 0; s < 4; ++s)
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
          double v = 0.0;
          for (int nu = 0; nu < 4; ++nu)
            for (int b = 0; b < 4; ++b)
              v -= dHi[t][a][nu] * dH[s][b][nu] * Hi[b][mu] +
                   Hi[a][nu] * ddH[t][s][b][nu] * Hi[b][mu] +
                   Hi[a][nu] * dH[s][b][nu] * dHi[t][b][mu];
          ddHi[t][s][a][mu] = v;
        }
  return ddHi;
}

// Anholonomy coefficients c_ab^c (and optionally their coordinate partials)
// from tetrad data; omega_abc = (1/2)(c_abc - c_bca + c_cab).
Ten3 anholonomy(const Mat4& H, const Mat4& Hi, const Ten3& dHi) {
  Ten3 c{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        double v = 0.0;
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu)
            v += (Hi[a][mu] * dHi[mu][b][nu] - Hi[b][mu] * dHi[mu][a][nu]) *
                 H[k][nu];
        c[a][b][k] = v;
      }
  return c;
}

Ten3 omega_from_anholonomy(const Ten3& c) {
  // lower the last index, combine, raise it again (eta diagonal)
  Ten3 cl{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k)
        cl[a][b][k] = c[a][b][k] * kEta[static_cast<std::size_t>(k)];
  Ten3 w{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        double wl = 0.5 * (cl[a][b][k] - cl[b][k][a] + cl[k][a][b]);
        w[a][b][k] = wl * kEta[static_cast<std::size_t>(k)];
      }
  return w;
}

struct GeometryCache {
  Mat4 H, Hi, g, ginv;
  Ten3 dH, dHi, dg;
  Ten4 ddH, ddHi, ddg;
};

GeometryCache geometry(const TetradField& t, const ChartPoint& p,
                       bool second_order) {
  if (t.domain && !t.domain(p))
    throw std::domain_error("chart point outside domain: " + t.name);
  GeometryCache c;
  c.H = t.h(p);
  Mat4 hm{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) hm[i][j] = c.H[i][j];
  Mat4 inv = invert4(hm);
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) c.Hi[a][mu] = inv[mu][a];
  c.dH = t.dh(p);
  c.dHi = inverse_partials(c.Hi, c.dH);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a)
        v += kEta[static_cast<std::size_t>(a)] * c.H[a][mu] * c.H[a][nu];
      c.g[mu][nu] = v;
    }
  c.ginv = invert4(c.g);
  for (int s = 0; s < 4; ++s)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double v = 0.0;
        for (int a = 0; a < 4; ++a)
          v += kEta[static_cast<std::size_t>(a)] *
               (c.dH[s][a][mu] * c.H[a][nu] + c.H[a][mu] * c.dH[s][a][nu]);
        c.dg[s][mu][nu] = v;
      }
  if (second_order) {
    c.ddH = t.ddh(p);
    c.ddHi = inverse_second_partials(c.Hi, c.dH, c.ddH, c.dHi);
    for (int tt = 0; tt < 4; ++tt)
      for (int s = 0; s < 4; ++s)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            double v = 0.0;
            for (int a = 0; a < 4; ++a)
              v += kEta[static_cast<std::size_t>(a)] *
                   (c.ddH[tt][s][a][mu] * c.H[a][nu] +
                    c.dH[s][a][mu] * c.dH[tt][a][nu] +
                    c.dH[tt][a][mu] * c.dH[s][a][nu] +
                    c.H[a][mu] * c.ddH[tt][s][a][nu]);
            c.ddg[tt][s][mu][nu] = v;
          }
  }
  return c;
}

Ten3 christoffels_from(const GeometryCache& c) {
  Ten3 G{};
  for (int al = 0; al < 4; ++al)
    for (int nu = 0; nu < 4; ++nu)
      for (int mu = 0; mu < 4; ++mu) {
        double v = 0.0;
        for (int s = 0; s < 4; ++s)
          v += 0.5 * c.ginv[al][s] *
               (c.dg[nu][s][mu] + c.dg[mu][s][nu] - c.dg[s][nu][mu]);
        G[al][nu][mu] = v;
      }
  return G;
}

std::array<double, 4> scalar_radial_profile(double coef, double x1) {
  // phi = coef / x1: returns {phi, phi_r, phi_rr, 0}
  return {coef / x1, -coef / (x1 * x1), 2.0 * coef / (x1 * x1 * x1), 0.0};
}

}  // namespace

Mat4 invert4(const Mat4& m) {
  // Gauss-Jordan with partial pivoting.
  Mat4 a = m, inv = identity_mat();
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14)
      throw std::runtime_error("invert4: singular matrix");
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    double d = a[col][col];
    for (int j = 0; j < 4; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = a[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 4; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

double max_abs(const Mat4& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (double v : row) r = std::max(r, std::abs(v));
  return r;
}

double max_abs(const Ten3& t) {
  double r = 0.0;
  for (const auto& m : t) r = std::max(r, max_abs(m));
  return r;
}

TetradField with_fd_partials(TetradField t, double step_scale) {
  auto h = t.h;
  auto step = [step_scale](const ChartPoint& p, int nu, double floor_scale) {
    return std::max(step_scale, floor_scale) * (1.0 + std::abs(p[nu]));
  };
  t.dh = [h, step](const ChartPoint& p) {
    Ten3 d{};
    for (int nu = 0; nu < 4; ++nu) {
      double dl = step(p, nu, 0.0);
      ChartPoint pp = p, pm = p;
      pp[nu] += dl;
      pm[nu] -= dl;
      Mat4 fp = h(pp), fm = h(pm);
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
          d[nu][a][mu] = (fp[a][mu] - fm[a][mu]) / (2.0 * dl);
    }
    return d;
  };
  t.ddh = [h, step](const ChartPoint& p) {
    Ten4 dd{};
    Mat4 f0 = h(p);
    for (int s = 0; s < 4; ++s)
      for (int nu = 0; nu < 4; ++nu) {
        // wider step for second differences (roundoff control)
        double ds = step(p, s, 1e-4), dn = step(p, nu, 1e-4);
        if (s == nu) {
          ChartPoint pp = p, pm = p;
          pp[s] += ds;
          pm[s] -= ds;
          Mat4 fp = h(pp), fm = h(pm);
          for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu)
              dd[s][nu][a][mu] =
                  (fp[a][mu] - 2.0 * f0[a][mu] + fm[a][mu]) / (ds * ds);
        } else {
          ChartPoint pp = p, pm = p, mp = p, mm = p;
          pp[s] += ds; pp[nu] += dn;
          pm[s] += ds; pm[nu] -= dn;
          mp[s] -= ds; mp[nu] += dn;
          mm[s] -= ds; mm[nu] -= dn;
          Mat4 a1 = h(pp), a2 = h(pm), a3 = h(mp), a4 = h(mm);
          for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu)
              dd[s][nu][a][mu] = (a1[a][mu] - a2[a][mu] - a3[a][mu] +
                                  a4[a][mu]) /
                                 (4.0 * ds * dn);
        }
      }
    return dd;
  };
  t.name += "+fd";
  return t;
}

TetradField builtin_spacetime(const std::string& name,
                              const std::map<std::string, double>& params) {
  auto get_m = [&params]() {
    auto it = params.find("m");
    if (it == params.end())
      throw std::invalid_argument("missing parameter m");
    return it->second;
  };
  TetradField t;
  t.name = name;
  if (name == "minkowski") {
    t.h = [](const ChartPoint&) { return identity_mat(); };
    t.dh = [](const ChartPoint&) { return Ten3{}; };
    t.ddh = [](const ChartPoint&) { return Ten4{}; };
    t.domain = [](const ChartPoint&) { return true; };
    t.sample = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> d(-5.0, 5.0);
      ChartPoint p;
      for (int i = 0; i < 4; ++i) p[i] = d(rng);
      return p;
    };
    return t;
  }
  if (name == "minkowski_spherical" || name == "schwarzschild") {
    // coords (t, r, theta, phi); Minkowski is the m = 0 limit
    double m = (name == "schwarzschild") ? get_m() : 0.0;
    t.h = [m](const ChartPoint& p) {
      double r = p[1], th = p[2];
      double A = std::sqrt(1.0 - 2.0 * m / r);
      Mat4 h{};
      h[0][0] = A;
      h[1][1] = 1.0 / A;
      h[2][2] = r;
      h[3][3] = r * std::sin(th);
      return h;
    };
    t.dh = [m](const ChartPoint& p) {
      double r = p[1], th = p[2];
      double A = std::sqrt(1.0 - 2.0 * m / r);
      double Ar = m / (r * r * A);
      Ten3 d{};
      d[1][0][0] = Ar;
      d[1][1][1] = -Ar / (A * A);
      d[1][2][2] = 1.0;
      d[1][3][3] = std::sin(th);
      d[2][3][3] = r * std::cos(th);
      return d;
    };
    t.ddh = [m](const ChartPoint& p) {
      double r = p[1], th = p[2];
      double A = std::sqrt(1.0 - 2.0 * m / r);
      double Ar = m / (r * r * A);
      double Arr = -2.0 * m / (r * r * r * A) - m * Ar / (r * r * A * A);
      double iA_rr = -Arr / (A * A) + 2.0 * Ar * Ar / (A * A * A);
      Ten4 dd{};
      dd[1][1][0][0] = Arr;
      dd[1][1][1][1] = iA_rr;
      dd[1][2][3][3] = std::cos(th);
      dd[2][1][3][3] = std::cos(th);
      dd[2][2][3][3] = -r * std::sin(th);
      return dd;
    };
    double rmin = (m > 0.0) ? 2.0 * m * (1.0 + 1e-6) : 1e-6;
    t.domain = [rmin](const ChartPoint& p) {
      return p[1] > rmin && std::sin(p[2]) > 1e-6;
    };
    double rlo = (m > 0.0) ? 3.0 * m : 1.0, rhi = (m > 0.0) ? 50.0 * m : 20.0;
    t.sample = [rlo, rhi](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> ut(-5.0, 5.0), ur(rlo, rhi),
          uth(0.3, 3.141592653589793 - 0.3), uph(0.1, 6.0);
      ChartPoint p;
      p[0] = ut(rng);
      p[1] = ur(rng);
      p[2] = uth(rng);
      p[3] = uph(rng);
      return p;
    };
    return t;
  }
  if (name == "schwarzschild_isotropic") {
    // Cartesian (t, x, y, z), rho = |x|; valid for rho > m/2.
    double m = get_m();
    auto radius = [](const ChartPoint& p) {
      return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    };
    t.h = [m, radius](const ChartPoint& p) {
      double rho = radius(p);
      double u = 1.0 + 0.5 * m / rho, v = 1.0 - 0.5 * m / rho;
      Mat4 h{};
      h[0][0] = v / u;
      for (int i = 1; i < 4; ++i) h[i][i] = u * u;
      return h;
    };
    t.dh = [m, radius](const ChartPoint& p) {
      double rho = radius(p);
      double u = 1.0 + 0.5 * m / rho;
      double F0r = m / (rho * rho * u * u);       // d(v/u)/drho
      double Fsr = -m * u / (rho * rho);          // d(u^2)/drho
      Ten3 d{};
      for (int k = 1; k < 4; ++k) {
        double nk = p[k] / rho;
        d[k][0][0] = F0r * nk;
        for (int i = 1; i < 4; ++i) d[k][i][i] = Fsr * nk;
      }
      return d;
    };
    t.ddh = [m, radius](const ChartPoint& p) {
      double rho = radius(p);
      double u = 1.0 + 0.5 * m / rho;
      double F0r = m / (rho * rho * u * u);
      double F0rr = -2.0 * m / (rho * rho * rho * u * u) +
                    m * m / (rho * rho * rho * rho * u * u * u);
      double Fsr = -m * u / (rho * rho);
      double Fsrr = m * m / (2.0 * rho * rho * rho * rho) +
                    2.0 * m * u / (rho * rho * rho);
      Ten4 dd{};
      for (int l = 1; l < 4; ++l)
        for (int k = 1; k < 4; ++k) {
          double nk = p[k] / rho, nl = p[l] / rho;
          double proj = ((k == l) ? 1.0 : 0.0) - nk * nl;
          double s0 = F0rr * nk * nl + F0r * proj / rho;
          double ss = Fsrr * nk * nl + Fsr * proj / rho;
          dd[l][k][0][0] = s0;
          for (int i = 1; i < 4; ++i) dd[l][k][i][i] = ss;
        }
      return dd;
    };
    double rhomin = 0.5 * m * (1.0 + 1e-3);
    t.domain = [rhomin, radius](const ChartPoint& p) {
      return radius(p) > rhomin;
    };
    t.sample = [m](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> ur(3.0 * m, 50.0 * m),
          uc(-1.0, 1.0), uph(0.0, 6.283185307179586), ut(-5.0, 5.0);
      double rho = ur(rng), c = uc(rng), ph = uph(rng);
      double s = std::sqrt(1.0 - c * c);
      ChartPoint p;
      p[0] = ut(rng);
      p[1] = rho * s * std::cos(ph);
      p[2] = rho * s * std::sin(ph);
      p[3] = rho * c;
      return p;
    };
    return t;
  }
  if (name == "schwarzschild_altchart") {
    // Cartesianized radial chart rho with r = rho + m^2/rho; partials by FD.
    double m = get_m();
    auto radius = [](const ChartPoint& p) {
      return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    };
    t.h = [m, radius](const ChartPoint& p) {
      double rho = radius(p);
      double r = rho + m * m / rho;
      double rp = 1.0 - m * m / (rho * rho);  // dr/drho
      double f = 1.0 - 2.0 * m / r;
      double sC = rp / std::sqrt(f);          // radial leg
      double sD = r / rho;                    // tangential legs
      Mat4 h{};
      h[0][0] = std::sqrt(f);
      for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j) {
          double ni = p[i] / rho, nj = p[j] / rho;
          h[i][j] = sD * (((i == j) ? 1.0 : 0.0) - ni * nj) + sC * ni * nj;
        }
      return h;
    };
    double rhomin = 2.5 * m;
    t.domain = [rhomin, radius](const ChartPoint& p) {
      return radius(p) > rhomin;
    };
    t.sample = [m](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> ur(5.0 * m, 50.0 * m),
          uc(-1.0, 1.0), uph(0.0, 6.283185307179586), ut(-5.0, 5.0);
      double rho = ur(rng), c = uc(rng), ph = uph(rng);
      double s = std::sqrt(1.0 - c * c);
      ChartPoint p;
      p[0] = ut(rng);
      p[1] = rho * s * std::cos(ph);
      p[2] = rho * s * std::sin(ph);
      p[3] = rho * c;
      return p;
    };
    return with_fd_partials(t);
  }
  if (name == "einstein_de_sitter") {
    // flat FRW with a(t) = t^{2/3}, coords (t, x, y, z)
    t.h = [](const ChartPoint& p) {
      double a = std::pow(p[0], 2.0 / 3.0);
      Mat4 h{};
      h[0][0] = 1.0;
      for (int i = 1; i < 4; ++i) h[i][i] = a;
      return h;
    };
    t.dh = [](const ChartPoint& p) {
      double ad = (2.0 / 3.0) * std::pow(p[0], -1.0 / 3.0);
      Ten3 d{};
      for (int i = 1; i < 4; ++i) d[0][i][i] = ad;
      return d;
    };
    t.ddh = [](const ChartPoint& p) {
      double add = -(2.0 / 9.0) * std::pow(p[0], -4.0 / 3.0);
      Ten4 dd{};
      for (int i = 1; i < 4; ++i) dd[0][0][i][i] = add;
      return dd;
    };
    t.domain = [](const ChartPoint& p) { return p[0] > 1e-3; };
    t.sample = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> utime(0.5, 10.0), us(-5.0, 5.0);
      ChartPoint p;
      p[0] = utime(rng);
      for (int i = 1; i < 4; ++i) p[i] = us(rng);
      return p;
    };
    return t;
  }
  throw std::invalid_argument("unknown spacetime: " + name);
}

TetradField apply_local_lorentz(const TetradField& t, const LocalLorentz& L,
                                const std::string& suffix) {
  TetradField r = t;
  r.name = t.name + suffix;
  auto th = t.h;
  auto tdh = t.dh;
  auto tddh = t.ddh;
  r.h = [th, L](const ChartPoint& p) {
    Mat4 lam = L.L(p), h = th(p), out{};
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu)
        for (int b = 0; b < 4; ++b) out[a][mu] += lam[a][b] * h[b][mu];
    return out;
  };
  r.dh = [th, tdh, L](const ChartPoint& p) {
    Mat4 lam = L.L(p), h = th(p);
    Ten3 dl = L.dL(p), dh = tdh(p), out{};
    for (int nu = 0; nu < 4; ++nu)
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
          for (int b = 0; b < 4; ++b)
            out[nu][a][mu] +=
                dl[nu][a][b] * h[b][mu] + lam[a][b] * dh[nu][b][mu];
    return out;
  };
  r.ddh = [th, tdh, tddh, L](const ChartPoint& p) {
    Mat4 lam = L.L(p), h = th(p);
    Ten3 dl = L.dL(p), dh = tdh(p);
    Ten4 ddl = L.ddL(p), ddh = tddh(p), out{};
    for (int s = 0; s < 4; ++s)
      for (int nu = 0; nu < 4; ++nu)
        for (int a = 0; a < 4; ++a)
          for (int mu = 0; mu < 4; ++mu)
            for (int b = 0; b < 4; ++b)
              out[s][nu][a][mu] += ddl[s][nu][a][b] * h[b][mu] +
                                   dl[nu][a][b] * dh[s][b][mu] +
                                   dl[s][a][b] * dh[nu][b][mu] +
                                   lam[a][b] * ddh[s][nu][b][mu];
    return out;
  };
  return r;
}

namespace {

LocalLorentz radial_profile_transform(double coef, bool boost) {
  LocalLorentz L;
  auto block = [boost](double phi, int deriv) {
    // 2x2 block (and its phi-derivatives) of the transformation
    Mat4 b{};
    if (boost) {
      double c = std::cosh(phi), s = std::sinh(phi);
      if (deriv % 2 == 1) std::swap(c, s);
      b[0][0] = c; b[0][1] = s; b[1][0] = s; b[1][1] = c;
    } else {
      double c = std::cos(phi), s = std::sin(phi);
      double sign = (deriv == 1 || deriv == 2) ? -1.0 : 1.0;
      if (deriv % 2 == 1) {
        b[1][1] = -sign * s; b[1][2] = sign * c;
        b[2][1] = -sign * c; b[2][2] = -sign * s;
      } else {
        b[1][1] = sign * c; b[1][2] = sign * s;
        b[2][1] = -sign * s; b[2][2] = sign * c;
      }
    }
    return b;
  };
  L.L = [coef, block, boost](const ChartPoint& p) {
    auto prof = scalar_radial_profile(coef, p[1]);
    Mat4 r = block(prof[0], 0);
    for (int i = 0; i < 4; ++i)
      if ((boost && i > 1) || (!boost && (i == 0 || i == 3))) r[i][i] = 1.0;
    return r;
  };
  L.dL = [coef, block](const ChartPoint& p) {
    auto prof = scalar_radial_profile(coef, p[1]);
    Mat4 b1 = block(prof[0], 1);
    Ten3 d{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) d[1][a][b] = b1[a][b] * prof[1];
    return d;
  };
  L.ddL = [coef, block](const ChartPoint& p) {
    auto prof = scalar_radial_profile(coef, p[1]);
    Mat4 b1 = block(prof[0], 1), b2 = block(prof[0], 2);
    Ten4 dd{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        dd[1][1][a][b] = b2[a][b] * prof[1] * prof[1] + b1[a][b] * prof[2];
    return dd;
  };
  return L;
}

}  // namespace

LocalLorentz radial_boost(double chi0, double m) {
  return radial_profile_transform(chi0 * m, true);
}

LocalLorentz leg_rotation(double alpha0, double m) {
  return radial_profile_transform(alpha0 * m, false);
}

LocalLorentz constant_rotation(double alpha) {
  LocalLorentz L;
  L.L = [alpha](const ChartPoint&) {
    Mat4 r{};
    r[0][0] = r[3][3] = 1.0;
    r[1][1] = std::cos(alpha); r[1][2] = std::sin(alpha);
    r[2][1] = -std::sin(alpha); r[2][2] = std::cos(alpha);
    return r;
  };
  L.dL = [](const ChartPoint&) { return Ten3{}; };
  L.ddL = [](const ChartPoint&) { return Ten4{}; };
  return L;
}

Mat4 tetrad_at(const TetradField& t, const ChartPoint& p) { return t.h(p); }

Mat4 inverse_tetrad_at(const TetradField& t, const ChartPoint& p) {
  return geometry(t, p, false).Hi;
}

Mat4 metric_from_tetrad(const TetradField& t, const ChartPoint& p) {
  return geometry(t, p, false).g;
}

Mat4 inverse_metric(const TetradField& t, const ChartPoint& p) {
  return geometry(t, p, false).ginv;
}

Ten3 metric_partials(const TetradField& t, const ChartPoint& p) {
  return geometry(t, p, false).dg;
}

Ten3 christoffels(const TetradField& t, const ChartPoint& p) {
  return christoffels_from(geometry(t, p, false));
}

Ten4 christoffel_partials(const TetradField& t, const ChartPoint& p) {
  GeometryCache c = geometry(t, p, true);
  Ten3 dginv{};
  for (int s = 0; s < 4; ++s)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            v -= c.ginv[i][k] * c.dg[s][k][l] * c.ginv[l][j];
        dginv[s][i][j] = v;
      }
  Ten4 dG{};
  for (int tt = 0; tt < 4; ++tt)
    for (int al = 0; al < 4; ++al)
      for (int nu = 0; nu < 4; ++nu)
        for (int mu = 0; mu < 4; ++mu) {
          double v = 0.0;
          for (int s = 0; s < 4; ++s) {
            v += 0.5 * dginv[tt][al][s] *
                 (c.dg[nu][s][mu] + c.dg[mu][s][nu] - c.dg[s][nu][mu]);
            v += 0.5 * c.ginv[al][s] *
                 (c.ddg[tt][nu][s][mu] + c.ddg[tt][mu][s][nu] -
                  c.ddg[tt][s][nu][mu]);
          }
          dG[tt][al][nu][mu] = v;
        }
  return dG;
}

Ten3 connection_coeffs(const TetradField& t, const ChartPoint& p) {
  GeometryCache c = geometry(t, p, false);
  return omega_from_anholonomy(anholonomy(c.H, c.Hi, c.dHi));
}

Ten3 connection_coeffs_christoffel(const TetradField& t, const ChartPoint& p) {
  GeometryCache c = geometry(t, p, false);
  Ten3 G = christoffels_from(c);
  Ten3 w{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          for (int mu = 0; mu < 4; ++mu) {
            double gam = 0.0;
            for (int s = 0; s < 4; ++s) gam += G[nu][mu][s] * c.Hi[b][s];
            v += c.H[k][nu] * c.Hi[a][mu] * (c.dHi[mu][b][nu] + gam);
          }
        w[a][b][k] = v;
      }
  return w;
}

Ten4 connection_partials(const TetradField& t, const ChartPoint& p) {
  GeometryCache c = geometry(t, p, true);
  // d_sig of the anholonomy coefficients, then the same linear combination.
  Ten4 dc{};
  for (int s = 0; s < 4; ++s)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k) {
          double v = 0.0;
          for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
              double base = c.Hi[a][mu] * c.dHi[mu][b][nu] -
                            c.Hi[b][mu] * c.dHi[mu][a][nu];
              double dbase = c.dHi[s][a][mu] * c.dHi[mu][b][nu] +
                             c.Hi[a][mu] * c.ddHi[s][mu][b][nu] -
                             c.dHi[s][b][mu] * c.dHi[mu][a][nu] -
                             c.Hi[b][mu] * c.ddHi[s][mu][a][nu];
              v += dbase * c.H[k][nu] + base * c.dH[s][k][nu];
            }
          dc[s][a][b][k] = v;
        }
  Ten4 dw{};
  for (int s = 0; s < 4; ++s) {
    Ten3 cl{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k)
          cl[a][b][k] = dc[s][a][b][k] * kEta[static_cast<std::size_t>(k)];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k)
          dw[s][a][b][k] = 0.5 * (cl[a][b][k] - cl[b][k][a] + cl[k][a][b]) *
                           kEta[static_cast<std::size_t>(k)];
  }
  return dw;
}

namespace {

Multivector bivector_from_omega(const Ten3& w, int a) {
  // Omega_a = -(1/2) eta^{pb} omega_ab^q e_p e_q
  Multivector r;
  for (int pidx = 0; pidx < 4; ++pidx)
    for (int q = 0; q < 4; ++q) {
      double coef = kEta[static_cast<std::size_t>(pidx)] * w[a][pidx][q];
      if (coef == 0.0) continue;
      r += gp(Multivector::basis(pidx), Multivector::basis(q)) * (-0.5 * coef);
    }
  return r;
}

}  // namespace

std::array<Multivector, 4> spin_connection_frame(const TetradField& t,
                                                 const ChartPoint& p) {
  Ten3 w = connection_coeffs(t, p);
  std::array<Multivector, 4> out;
  for (int a = 0; a < 4; ++a) out[static_cast<std::size_t>(a)] = bivector_from_omega(w, a);
  return out;
}

std::array<Multivector, 4> spin_connection_frame_partials_coord(
    const TetradField& t, const ChartPoint& p, int a) {
  Ten4 dw = connection_partials(t, p);
  std::array<Multivector, 4> out;
  for (int nu = 0; nu < 4; ++nu)
    out[static_cast<std::size_t>(nu)] = bivector_from_omega(dw[nu], a);
  return out;
}

std::array<Multivector, 4> spin_connection_coord(const TetradField& t,
                                                 const ChartPoint& p) {
  Mat4 H = t.h(p);
  std::array<Multivector, 4> Om = spin_connection_frame(t, p);
  std::array<Multivector, 4> out;
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 4; ++a)
      out[static_cast<std::size_t>(mu)] += Om[static_cast<std::size_t>(a)] * H[a][mu];
  return out;
}

std::array<std::array<Multivector, 4>, 4> spin_connection_coord_partials(
    const TetradField& t, const ChartPoint& p) {
  Mat4 H = t.h(p);
  Ten3 dH = t.dh(p);
  Ten3 w = connection_coeffs(t, p);
  Ten4 dw = connection_partials(t, p);
  std::array<std::array<Multivector, 4>, 4> out;
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu) {
      Multivector v;
      for (int a = 0; a < 4; ++a) {
        v += bivector_from_omega(w, a) * dH[nu][a][mu];
        v += bivector_from_omega(dw[nu], a) * H[a][mu];
      }
      out[static_cast<std::size_t>(nu)][static_cast<std::size_t>(mu)] = v;
    }
  return out;
}

std::array<Ten3, 4> riemann_coordinate(const TetradField& t,
                                       const ChartPoint& p) {
  Ten3 G = christoffels(t, p);
  Ten4 dG = christoffel_partials(t, p);
  std::array<Ten3, 4> R{};
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double v = dG[mu][al][nu][be] - dG[nu][al][mu][be];
          for (int s = 0; s < 4; ++s)
            v += G[al][mu][s] * G[s][nu][be] - G[al][nu][s] * G[s][mu][be];
          R[static_cast<std::size_t>(al)][be][mu][nu] = v;
        }
  return R;
}

double kretschmann_coordinate(const TetradField& t, const ChartPoint& p) {
  std::array<Ten3, 4> R = riemann_coordinate(t, p);
  GeometryCache c = geometry(t, p, false);
  // lower the first index, raise the last three
  double K = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          double up = 0.0;
          for (int a2 = 0; a2 < 4; ++a2)
            for (int b2 = 0; b2 < 4; ++b2)
              for (int m2 = 0; m2 < 4; ++m2)
                for (int n2 = 0; n2 < 4; ++n2)
                  up += c.g[a][a2] * c.ginv[b][b2] * c.ginv[m][m2] *
                        c.ginv[n][n2] * R[static_cast<std::size_t>(a2)][b2][m2][n2];
          K += R[static_cast<std::size_t>(a)][b][m][n] * up;
        }
  return K;
}

VectorField frame_e0(const TetradField& t) {
  VectorField Z;
  Z.v = [t](const ChartPoint& p) {
    Mat4 Hi = inverse_tetrad_at(t, p);
    return std::array<double, 4>{Hi[0][0], Hi[0][1], Hi[0][2], Hi[0][3]};
  };
  Z.dv = [t](const ChartPoint& p) {
    GeometryCache c = geometry(t, p, false);
    Mat4 d{};
    for (int nu = 0; nu < 4; ++nu)
      for (int mu = 0; mu < 4; ++mu) d[nu][mu] = c.dHi[nu][0][mu];
    return d;
  };
  return Z;
}

Mat4 covariant_derivative_of_covector(const VectorField& Z,
                                      const TetradField& t,
                                      const ChartPoint& p) {
  GeometryCache c = geometry(t, p, false);
  Ten3 G = christoffels_from(c);
  std::array<double, 4> v = Z.v(p);
  Mat4 dv = Z.dv(p);
  std::array<double, 4> vl{};
  for (int mu = 0; mu < 4; ++mu)
    for (int s = 0; s < 4; ++s) vl[static_cast<std::size_t>(mu)] += c.g[mu][s] * v[static_cast<std::size_t>(s)];
  Mat4 nab{};
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu) {
      double d = 0.0;
      for (int s = 0; s < 4; ++s)
        d += c.dg[nu][mu][s] * v[static_cast<std::size_t>(s)] + c.g[mu][s] * dv[nu][s];
      for (int s = 0; s < 4; ++s) d -= G[s][nu][mu] * vl[static_cast<std::size_t>(s)];
      nab[nu][mu] = d;  // Z_{mu;nu}
    }
  return nab;
}

FrameKinematics frame_kinematics(const VectorField& Z, const TetradField& t,
                                 const ChartPoint& p) {
  GeometryCache c = geometry(t, p, false);
  std::array<double, 4> v = Z.v(p);
  std::array<double, 4> vl{};
  double norm = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int s = 0; s < 4; ++s) vl[static_cast<std::size_t>(mu)] += c.g[mu][s] * v[static_cast<std::size_t>(s)];
    norm += vl[static_cast<std::size_t>(mu)] * v[static_cast<std::size_t>(mu)];
  }
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::domain_error("frame_kinematics: Z is not unit timelike");
  Mat4 nab = covariant_derivative_of_covector(Z, t, p);  // [nu][mu] = Z_{mu;nu}
  FrameKinematics k;
  for (int mu = 0; mu < 4; ++mu) {
    double a = 0.0;
    for (int nu = 0; nu < 4; ++nu) a += v[static_cast<std::size_t>(nu)] * nab[nu][mu];
    k.acceleration[static_cast<std::size_t>(mu)] = a;
  }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) k.expansion += c.ginv[mu][nu] * nab[mu][nu];
  // projector p^al_mu = delta - Z^al Z_mu
  Mat4 proj{};
  for (int al = 0; al < 4; ++al)
    for (int mu = 0; mu < 4; ++mu)
      proj[al][mu] = ((al == mu) ? 1.0 : 0.0) - v[static_cast<std::size_t>(al)] * vl[static_cast<std::size_t>(mu)];
  Mat4 pl{};  // p_{mu nu}
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      pl[mu][nu] = c.g[mu][nu] - vl[static_cast<std::size_t>(mu)] * vl[static_cast<std::size_t>(nu)];
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double anti = 0.0, sym = 0.0;
      for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
          double za_b = nab[be][al];  // Z_{al;be}
          double zb_a = nab[al][be];
          anti += 0.5 * (za_b - zb_a) * proj[al][mu] * proj[be][nu];
          sym += 0.5 * (za_b + zb_a) * proj[al][mu] * proj[be][nu];
        }
      k.rotation[mu][nu] = anti;
      k.shear[mu][nu] = sym - (k.expansion / 3.0) * pl[mu][nu];
    }
  return k;
}

}  // namespace cbv

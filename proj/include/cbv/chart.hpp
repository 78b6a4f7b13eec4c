#pragma once

#include <array>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "cbv/multivector.hpp"

namespace cbv {

struct ChartPoint {
  std::array<double, 4> x{};

  double  operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  double& operator[](int i)       { return x[static_cast<std::size_t>(i)]; }
};

using Mat4 = std::array<std::array<double, 4>, 4>;
using Ten3 = std::array<Mat4, 4>;   // leading index: derivative direction
using Ten4 = std::array<Ten3, 4>;   // two leading derivative directions

Mat4 invert4(const Mat4& m);        // throws on singular input
double max_abs(const Mat4& m);
double max_abs(const Ten3& t);

// Orthonormal tetrad field h^a_mu on a coordinate chart with derivative
// providers.  Layout: h[a][mu]; dh[nu][a][mu] = d_nu h^a_mu;
// ddh[sig][nu][a][mu] = d_sig d_nu h^a_mu.
struct TetradField {
  std::string name;
  std::function<Mat4(const ChartPoint&)> h;
  std::function<Ten3(const ChartPoint&)> dh;
  std::function<Ten4(const ChartPoint&)> ddh;
  std::function<bool(const ChartPoint&)> domain;
  std::function<ChartPoint(std::mt19937_64&)> sample;  // random domain point
};

// Replace the derivative providers with central finite differences of h
// (step per direction: step_scale * (1 + |x_nu|)).
TetradField with_fd_partials(TetradField t, double step_scale = 1e-5);

// Builtins: minkowski, minkowski_spherical, schwarzschild,
// schwarzschild_isotropic, schwarzschild_altchart, einstein_de_sitter.
// params: {"m": mass} where applicable.
TetradField builtin_spacetime(const std::string& name,
                              const std::map<std::string, double>& params = {});

// Pointwise local Lorentz transformation Lambda^a_b with partials.
struct LocalLorentz {
  std::function<Mat4(const ChartPoint&)> L;
  std::function<Ten3(const ChartPoint&)> dL;    // [nu][a][b]
  std::function<Ten4(const ChartPoint&)> ddL;   // [sig][nu][a][b]
};

// h' = Lambda h with exact product-rule partials.
TetradField apply_local_lorentz(const TetradField& t, const LocalLorentz& L,
                                const std::string& suffix);

// Boost in the (0,1) frame plane with rapidity chi0*m/x1 (x1 the radial
// coordinate), and rotation of legs (1,2) by angle alpha0*m/x1.
LocalLorentz radial_boost(double chi0, double m);
LocalLorentz leg_rotation(double alpha0, double m);
// x-independent rotation of legs (1,2) by a fixed angle.
LocalLorentz constant_rotation(double alpha);

// Pointwise metric quantities (all layouts documented at the member).
Mat4 tetrad_at(const TetradField& t, const ChartPoint& p);        // h[a][mu]
Mat4 inverse_tetrad_at(const TetradField& t, const ChartPoint& p);// hi[a][mu] = h_a^mu
Mat4 metric_from_tetrad(const TetradField& t, const ChartPoint& p);
Mat4 inverse_metric(const TetradField& t, const ChartPoint& p);
Ten3 metric_partials(const TetradField& t, const ChartPoint& p);  // [sig][mu][nu]
Ten3 christoffels(const TetradField& t, const ChartPoint& p);     // Gamma[al][nu][mu]
Ten4 christoffel_partials(const TetradField& t, const ChartPoint& p); // [tau][al][nu][mu]

// Levi-Civita connection in the frame: omega[a][b][c] = omega_ab^c with
// D_{e_a} e_b = omega_ab^c e_c; computed from anholonomy coefficients.
Ten3 connection_coeffs(const TetradField& t, const ChartPoint& p);
// Independent oracle via Christoffels: h^c_nu h_a^mu (d_mu h_b^nu + Gamma h_b).
Ten3 connection_coeffs_christoffel(const TetradField& t, const ChartPoint& p);
// Coordinate partials d_sig omega_ab^c by the chain rule (needs ddh).
Ten4 connection_partials(const TetradField& t, const ChartPoint& p);

// Bivector-valued connection: Omega_a = -(1/2) omega_a^{pq} e_p e_q with
// omega_a^{pq} = eta^{pc} omega_ac^q; satisfies (1/2)[Omega_a, e_b] =
// omega_ab^c e_c.  Coordinate form omega_mu = h^a_mu Omega_a.
std::array<Multivector, 4> spin_connection_frame(const TetradField& t,
                                                 const ChartPoint& p);
std::array<Multivector, 4> spin_connection_frame_partials_coord(
    const TetradField& t, const ChartPoint& p, int a);  // d_nu Omega_a, nu=0..3
std::array<Multivector, 4> spin_connection_coord(const TetradField& t,
                                                 const ChartPoint& p);
// [nu][mu] = d_nu omega_mu
std::array<std::array<Multivector, 4>, 4> spin_connection_coord_partials(
    const TetradField& t, const ChartPoint& p);

// Classical coordinate Riemann tensor R^alpha_{beta mu nu} and scalars.
std::array<Ten3, 4> riemann_coordinate(const TetradField& t,
                                       const ChartPoint& p);
double kretschmann_coordinate(const TetradField& t, const ChartPoint& p);

// Vector field with coordinate components and their partials
// (dv[nu][mu] = d_nu v^mu).
struct VectorField {
  std::function<std::array<double, 4>(const ChartPoint&)> v;
  std::function<Mat4(const ChartPoint&)> dv;
};

// Z = e_0 of the tetrad, with analytic derivative.
VectorField frame_e0(const TetradField& t);

struct FrameKinematics {
  std::array<double, 4> acceleration{};  // a_mu (covariant)
  Mat4 rotation{};                       // varpi_{mu nu}
  Mat4 shear{};                          // sigma_{mu nu}
  double expansion = 0.0;                // E = Z^mu_{;mu}
};

// Kinematic decomposition of a unit timelike Z; throws if g(Z,Z) is not 1.
FrameKinematics frame_kinematics(const VectorField& Z, const TetradField& t,
                                 const ChartPoint& p);
// Covariant derivative matrix nabla[nu][mu] = Z_{mu;nu} (for reassembly checks).
Mat4 covariant_derivative_of_covector(const VectorField& Z,
                                      const TetradField& t,
                                      const ChartPoint& p);

}  // namespace cbv

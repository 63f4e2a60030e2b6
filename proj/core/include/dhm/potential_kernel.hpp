#pragma once

#include <span>
#include <vector>

#include "dhm/plane.hpp"

namespace dhm {

// Fitted over |x| in [20, 100]; the residual a(x) - (4/pi) ln|x| reaches
// this value within 1e-12 by |x| = 8.
inline constexpr double kReferenceC0 = 0.77259108031475;

double bessel_j0(double x);
double bessel_j1(double x);

// Characteristic function of the unit-disk step, phi(r) = 2 J1(r) / r.
double charfn(double r);
// 1 - phi(r), without cancellation near r = 0.
double one_minus_charfn(double r);
// psi(r) = 1/(1 - phi(r)) - 8/r^2, finite at 0 with limit 1/3.
double psi_remainder(double r);

// One- and two-step transition densities of the unit-disk walk at distance d.
double p1_radial(double d);
double p2_radial(double d);
double p1(PlanePoint x);
double p2(PlanePoint x);

struct KernelQuadrature {
  double r_max = 200.0;      // first truncation radius
  int nodes_per_panel = 24;  // Gauss-Legendre points per panel
  double tail_tol = 1e-8;    // required change between R and 2R
  int max_doublings = 4;
};

// a(x) = [p1(0) - p1(x)] + [p2(0) - p2(x)]
//        + (1/2pi) int_0^inf (1 - J0(r|x|)) phi^3 / (1 - phi) r dr
double potential_a_radial(double d, const KernelQuadrature& quad = {});
double potential_a(PlanePoint x, const KernelQuadrature& quad = {});

struct PotentialProfile {
  std::vector<double> radii;
  std::vector<double> a_values;
  std::vector<double> residuals;  // a - (4/pi) ln r
  double c0_hat = 0.0;
  double c0_ci = 0.0;  // one standard error of the fit
  double decay_coef = 0.0;
  double decay_ci = 0.0;
  std::vector<double> fit_residuals;
  double max_fit_residual = 0.0;
};

// Least squares of residual(r) = C0 + c r^-2. Needs >= 6 radii spanning a
// factor of at least 4.
PotentialProfile fit_c0(std::span<const double> radii, const KernelQuadrature& quad = {});
// Same data with c fixed at 0.
PotentialProfile fit_c0_constant(std::span<const double> radii, const KernelQuadrature& quad = {});

// (1/pi) int_{B(0,1)} [a(x + xi) - a(x)] dxi - (1/pi) 1{|x| < 1}.
double check_delta_identity(PlanePoint x, const KernelQuadrature& quad = {});

}  // namespace dhm

#pragma once

#include <vector>

#include "dhm/boundary_function.hpp"
#include "dhm/conformal_domain.hpp"
#include "dhm/halfplane_k.hpp"

namespace dhm {

// Integrand of rho at theta for fixed phi. Removable singularity at
// theta = phi, where the limit is m''(phi).
double rho_integrand(double phi, double theta, const AnalyticDomain& dom);

// rho(phi) = (1/4pi^2) int_0^{2pi} [m(theta) - m(phi) - m'(phi) sin(theta - phi)]
//                                   / (1 - cos(theta - phi)) dtheta
// by the offset midpoint rule with N nodes (N >= 64, even).
double rho(double phi, const AnalyticDomain& dom, int grid_size);

struct DensityTable {
  std::vector<double> grid;
  std::vector<double> m_values;
  std::vector<double> rho_values;
  std::vector<double> sigma_values;  // K m rho
  int grid_size = 0;
  double k_value = 0.0;
  double resolution_gap = 0.0;  // max |rho_N - rho_2N| on the grid
  bool under_resolved = false;
};

// Table on phi_k = 2 pi k / N. sigma_D at F(e^{i phi}) is K m(phi) rho(phi),
// because |dz| = dphi / m(phi) turns int g sigma_D |dz| into
// K int g(F(e^{i phi})) rho(phi) dphi.
DensityTable sigma_d(const AnalyticDomain& dom, double k_value = kReferenceK, int grid_size = 512);

// K int_0^{2pi} g(F(e^{i phi})) rho(phi) dphi on the table grid.
double predicted_slope(const DensityTable& table, const AnalyticDomain& dom, const BoundaryFunction& g);

// int g d(omega) = (1/2pi) int_0^{2pi} g(F(e^{i phi})) dphi.
double continuous_integral(const BoundaryFunction& g, const AnalyticDomain& dom, int n = 1024);

}  // namespace dhm

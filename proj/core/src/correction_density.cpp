#include "dhm/correction_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dhm/errors.hpp"

namespace dhm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(int n) {
  if (n < 64 || n % 2 != 0) throw ConfigError("density grid must be even and at least 64");
}

// rho on the grid phi_k = 2 pi k / n, from m sampled at the half-offset nodes.
std::vector<double> rho_on_grid(const AnalyticDomain& dom, int n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> m_half(un), kernel_sin(un), kernel_den(un);
  for (std::size_t i = 0; i < un; ++i) {
    const double a = kTwoPi * (static_cast<double>(i) + 0.5) / n;
    m_half[i] = dom.boundary_m(a).m;
    kernel_sin[i] = std::sin(a);
    kernel_den[i] = 1.0 / (1.0 - std::cos(a));
  }
  std::vector<double> out(un);
  const double scale = (kTwoPi / n) / (4.0 * std::numbers::pi * std::numbers::pi);
  for (std::size_t k = 0; k < un; ++k) {
    const BoundaryModulus bm = dom.boundary_m(kTwoPi * static_cast<double>(k) / n);
    double s = 0.0;
    for (std::size_t j = 0; j < un; ++j) {
      s += (m_half[(k + j) % un] - bm.m - bm.dm * kernel_sin[j]) * kernel_den[j];
    }
    out[k] = scale * s;
  }
  return out;
}

}  // namespace

double rho_integrand(double phi, double theta, const AnalyticDomain& dom) {
  const BoundaryModulus bm = dom.boundary_m(phi);
  const double a = theta - phi;
  const double den = 1.0 - std::cos(a);
  if (den == 0.0) return bm.d2m;
  return (dom.boundary_m(theta).m - bm.m - bm.dm * std::sin(a)) / den;
}

double rho(double phi, const AnalyticDomain& dom, int grid_size) {
  check_grid(grid_size);
  const BoundaryModulus bm = dom.boundary_m(phi);
  double s = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    const double a = kTwoPi * (j + 0.5) / grid_size;
    s += (dom.boundary_m(phi + a).m - bm.m - bm.dm * std::sin(a)) / (1.0 - std::cos(a));
  }
  return s * (kTwoPi / grid_size) / (4.0 * std::numbers::pi * std::numbers::pi);
}

DensityTable sigma_d(const AnalyticDomain& dom, double k_value, int grid_size) {
  check_grid(grid_size);
  if (!(k_value > 0.0) || !std::isfinite(k_value)) throw ConfigError("K must be positive");
  DensityTable t;
  t.grid_size = grid_size;
  t.k_value = k_value;
  t.rho_values = rho_on_grid(dom, grid_size);
  const std::vector<double> fine = rho_on_grid(dom, 2 * grid_size);
  for (int k = 0; k < grid_size; ++k) {
    const double phi = kTwoPi * k / grid_size;
    t.grid.push_back(phi);
    t.m_values.push_back(dom.boundary_m(phi).m);
    t.sigma_values.push_back(k_value * t.m_values.back() * t.rho_values[static_cast<std::size_t>(k)]);
    t.resolution_gap = std::max(t.resolution_gap,
                                std::abs(t.rho_values[static_cast<std::size_t>(k)] - fine[2 * static_cast<std::size_t>(k)]));
  }
  t.under_resolved = t.resolution_gap > 1e-8;
  return t;
}

double predicted_slope(const DensityTable& table, const AnalyticDomain& dom, const BoundaryFunction& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < table.grid.size(); ++k) {
    s += g(dom.boundary_point(table.grid[k])) * table.rho_values[k];
  }
  return table.k_value * s * kTwoPi / table.grid_size;
}

double continuous_integral(const BoundaryFunction& g, const AnalyticDomain& dom, int n) {
  if (n < 1) throw ConfigError("continuous integral needs n >= 1");
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += g(dom.boundary_point(kTwoPi * k / n));
  return s / n;
}

}  // namespace dhm

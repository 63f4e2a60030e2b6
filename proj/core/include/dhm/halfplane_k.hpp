#pragma once

#include <span>
#include <vector>

#include "dhm/walk.hpp"

namespace dhm {

inline constexpr double kReferenceK = 0.2647664;

double k_constant_term();  // 16 / (45 pi)
// w(theta) = sin^2 - sin^4 / 3 - theta cos sin
double k_integrand_weight(double theta);

// E^{iy}|Im S_T| for the walk with step radius cfg.h; fails on excessive
// censoring.
MCEstimate exit_functional(double y, const WalkConfig& cfg, const HalfPlaneOptions& opt = {},
                           std::uint64_t stream = streams::kHalfPlane);

struct KQuadratureOptions {
  int nodes = 32;
  // Repeat with 2N nodes at a reduced per-node budget to estimate the
  // quadrature error.
  bool check_doubled = true;
  double doubled_budget_fraction = 0.125;
  // Neyman allocation of the total budget after a pilot run.
  bool reallocate = false;
  std::uint64_t pilot_samples = 100000;
  HalfPlaneOptions walk;
};

struct KBreakdown {
  double constant_term = 0.0;
  std::vector<double> node_angles;
  std::vector<double> node_weights;
  std::vector<double> node_integrand_weights;
  std::vector<MCEstimate> node_estimates;
  MCEstimate k_value;

  bool doubled_checked = false;
  MCEstimate k_doubled;
  double quadrature_error = 0.0;  // |K_N - K_2N|
  bool quadrature_limited = false;
  double mean_steps = 0.0;
};

// Assembles K and its standard error from per-node estimates.
MCEstimate combine_k(std::span<const double> weights, std::span<const double> wtheta,
                     std::span<const MCEstimate> node_estimates);

// cfg.samples is the per-node budget (total budget when reallocating).
KBreakdown k_by_quadrature(const KQuadratureOptions& opt, const WalkConfig& cfg);

struct KLimitResult {
  std::vector<double> heights;
  std::vector<MCEstimate> estimates;
  std::vector<double> increments;  // estimate[i+1] - estimate[i]
  std::vector<double> increment_stderr;
  MCEstimate terminal;
};

KLimitResult k_by_limit(std::span<const double> heights, const WalkConfig& cfg,
                        const HalfPlaneOptions& opt = {});

}  // namespace dhm

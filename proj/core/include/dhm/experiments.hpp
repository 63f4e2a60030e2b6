#pragma once

#include <span>
#include <string>
#include <vector>

#include "dhm/boundary_function.hpp"
#include "dhm/conformal_domain.hpp"
#include "dhm/correction_density.hpp"
#include "dhm/stats.hpp"
#include "dhm/walk.hpp"

namespace dhm {

// ---------------------------------------------------------------------------
// Discrete harmonic measure integrals

enum class Estimator {
  plain,            // g(P S_T)
  control_variate,  // g(P S_T) - u(psi(S_T)) + u(0), u a harmonic extension of g o F
};

struct DiscreteIntegralOptions {
  Estimator estimator = Estimator::control_variate;
  int cv_modes = 64;
  std::uint64_t stream = streams::kSweep;
};

struct DiscreteIntegralRun {
  MCEstimate estimate;
  std::uint64_t geometry_failures = 0;
  double mean_steps = 0.0;
};

// Monte Carlo estimate of int g d(omega_h) from the origin. Non-smooth g
// always use the plain estimator.
DiscreteIntegralRun discrete_integral(const BoundaryFunction& g, const AnalyticDomain& dom,
                                      const WalkConfig& cfg, const DiscreteIntegralOptions& opt = {});

// ---------------------------------------------------------------------------
// Correction-slope sweep

struct SweepOptions {
  DiscreteIntegralOptions integral;
  double k_value = kReferenceK;
  int density_grid = 512;
  int exact_nodes = 4096;
  bool quadratic = false;  // ratio = s + b h + c h^2, needs >= 4 h values
  bool pilot_check = true;
  std::uint64_t pilot_samples = 20000;
  double slope_floor = 1e-3;  // absolute part of the resolution requirement
};

struct SweepResult {
  std::vector<double> h_values;  // decreasing
  std::vector<MCEstimate> mc_integrals;
  double exact_integral = 0.0;
  std::vector<double> ratios;
  std::vector<double> ratio_stderr;
  MCEstimate extrapolated_slope;
  double predicted_slope = 0.0;
  std::vector<double> fit_coefficients;
  double fit_chi2 = 0.0;
  double projected_slope_stderr = 0.0;  // from the pilot run
  std::uint64_t geometry_failures = 0;
  std::uint64_t censored = 0;
  std::vector<double> mean_steps;
};

// Projected standard error of the extrapolated slope for a budget, given
// per-h sample standard deviations.
double projected_intercept_stderr(std::span<const double> h_values, std::span<const double> sample_sd,
                                  std::uint64_t budget, bool quadratic);

// cfg supplies seed, threads and max_steps; cfg.h and cfg.samples are
// replaced by each h value and the budget.
SweepResult correction_sweep(const BoundaryFunction& g, const AnalyticDomain& dom,
                             std::vector<double> h_values, std::uint64_t budget, const WalkConfig& cfg,
                             const SweepOptions& opt = {});

// ---------------------------------------------------------------------------
// Green's function comparison

struct GreensOptions {
  std::uint64_t min_visits = 100;
  std::vector<double> collar_l_over_h = {0.5};
  double collar_half_width = 0.1;  // shell half width in units of h
  std::uint64_t halfplane_samples = 1'000'000;
  bool collar = true;
  std::uint64_t stream = streams::kGreens;
};

struct GreensBin {
  double x = 0.0, y = 0.0, area = 0.0;
  double gh_scaled = 0.0, gh_stderr = 0.0;
  double gd8 = 0.0;  // 8 G_D at the center, NaN if the center is outside or at 0
  double diff = 0.0;
  std::uint64_t visits = 0;
  bool admissible = false;
};

struct CollarRow {
  double l_over_h = 0.0;
  double l_lo = 0.0, l_hi = 0.0;  // shell in length units
  double gh_scaled = 0.0, gh_stderr = 0.0;
  double gd8 = 0.0;  // shell average of 8 G_D
  double diff = 0.0;
  double predicted = 0.0;  // shell average of 8 H_D h u(l/h)
  double predicted_stderr = 0.0;
  double relative_error = 0.0;
  std::uint64_t visits = 0;
};

struct GreensGrid {
  double h = 0.0;
  double bin_width = 0.0;
  std::vector<GreensBin> bins;
  double sup_diff = 0.0;
  double sup_stderr = 0.0;
  PlanePoint sup_at;
  std::uint64_t admissible_bins = 0;
  std::uint64_t low_visit_bins = 0;
  MCEstimate trajectory_length;
  double occupation_mass = 0.0;  // sum of G_h area over all bins
  std::vector<CollarRow> collar;
  std::uint64_t geometry_failures = 0;
};

GreensGrid greens_compare(const AnalyticDomain& dom, double h, std::uint64_t budget, double bin_width,
                          const WalkConfig& cfg, const GreensOptions& opt = {});

// ---------------------------------------------------------------------------
// Boundary-layer generator check

// f(z) = Re sum_k a_k z^k.
struct HarmonicPolynomial {
  std::vector<cplx> a;

  double operator()(PlanePoint z) const;
  // Directional derivative along the unit vector n.
  double derivative(PlanePoint z, PlanePoint n) const;
  // "re_z", "im_z", "re_z2", "im_z2", "re_z3", or coefficients "a0,a1,...".
  static HarmonicPolynomial parse(std::string_view spec);
};

struct BoundaryLayerResult {
  double h = 0.0, l = 0.0;
  double numeric = 0.0;
  double formula = 0.0;
  double diff = 0.0;
  double dfdn = 0.0;
  double bracket = 0.0;
  double quadrature_error = 0.0;
};

// (2/3) h^2 sqrt(h^2 - l^2) + (l^2/3) sqrt(h^2 - l^2) - l h^2 arccos(l/h)
double boundary_layer_bracket(double l, double h);

// Numeric Delta_h f at x + l n_x with the nearest-point extension outside D,
// against (1/(pi h^2)) df/dn(x) * bracket(l, h).
BoundaryLayerResult boundary_layer_laplacian(const AnalyticDomain& dom, const HarmonicPolynomial& f,
                                             double t, double l, double h, double tolerance = 1e-9);

}  // namespace dhm

#include "dhm/halfplane_k.hpp"

#include <cmath>
#include <numbers>

#include "dhm/quadrature.hpp"

namespace dhm {

double k_constant_term() { return 16.0 / (45.0 * std::numbers::pi); }

double k_integrand_weight(double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double s2 = s * s;
  return s2 - s2 * s2 / 3.0 - theta * c * s;
}

MCEstimate exit_functional(double y, const WalkConfig& cfg, const HalfPlaneOptions& opt,
                           std::uint64_t stream) {
  if (!(y > 0.0)) throw ConfigError("exit functional needs y > 0");
  const MCEstimate e = halfplane_exit_mean(y, cfg, opt, stream);
  check_failure_fraction(e.censored, e.n, cfg.max_censored_fraction, false);
  return e;
}

MCEstimate combine_k(std::span<const double> weights, std::span<const double> wtheta,
                     std::span<const MCEstimate> node_estimates) {
  const double scale = 8.0 / std::numbers::pi;
  double sum = 0.0, var = 0.0;
  MCEstimate k;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double c = scale * weights[j] * wtheta[j];
    sum += c * node_estimates[j].mean;
    var += c * c * node_estimates[j].std_error * node_estimates[j].std_error;
    k.n += node_estimates[j].n;
    k.censored += node_estimates[j].censored;
  }
  k.mean = k_constant_term() + sum;
  k.std_error = std::sqrt(var);
  return k;
}

namespace {

struct NodeRun {
  std::vector<double> angles, weights, wtheta;
  std::vector<MCEstimate> estimates;
  double steps = 0.0;
};

NodeRun run_nodes(int nodes, const std::vector<std::uint64_t>& budgets, const WalkConfig& cfg,
                  const HalfPlaneOptions& walk, std::uint64_t stream_base) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, std::numbers::pi / 2.0);
  NodeRun out;
  out.angles = rule.nodes;
  out.weights = rule.weights;
  double total_samples = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = rule.nodes[static_cast<std::size_t>(j)];
    out.wtheta.push_back(k_integrand_weight(theta));
    WalkConfig c = cfg;
    c.samples = budgets[static_cast<std::size_t>(j)];
    double steps = 0.0;
    // Unit-step convention: run at height h cos(theta) and rescale.
    MCEstimate e = halfplane_exit_mean(cfg.h * std::cos(theta), c, walk,
                                       stream_base + static_cast<std::uint64_t>(j), &steps);
    check_failure_fraction(e.censored, e.n, cfg.max_censored_fraction, false);
    e.mean /= cfg.h;
    e.std_error /= cfg.h;
    out.estimates.push_back(e);
    out.steps += steps * static_cast<double>(c.samples);
    total_samples += static_cast<double>(c.samples);
  }
  out.steps /= total_samples;
  return out;
}

}  // namespace

KBreakdown k_by_quadrature(const KQuadratureOptions& opt, const WalkConfig& cfg) {
  cfg.validate();
  if (opt.nodes < 8) throw ConfigError("K quadrature needs at least 8 nodes");
  const auto n = static_cast<std::size_t>(opt.nodes);
  std::vector<std::uint64_t> budgets(n, cfg.samples);

  if (opt.reallocate) {
    WalkConfig pilot = cfg;
    pilot.samples = opt.pilot_samples;
    const NodeRun p = run_nodes(opt.nodes, std::vector<std::uint64_t>(n, opt.pilot_samples), pilot,
                                opt.walk, streams::kPilot);
    std::vector<double> score(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double sd = p.estimates[j].std_error * std::sqrt(static_cast<double>(opt.pilot_samples));
      score[j] = std::abs(p.weights[j] * p.wtheta[j]) * sd;
      total += score[j];
    }
    const double budget = static_cast<double>(cfg.samples) * static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      budgets[j] = std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(budget * score[j] / total));
    }
  }

  const NodeRun main = run_nodes(opt.nodes, budgets, cfg, opt.walk, streams::kQuadratureNode);
  KBreakdown out;
  out.constant_term = k_constant_term();
  out.node_angles = main.angles;
  out.node_weights = main.weights;
  out.node_integrand_weights = main.wtheta;
  out.node_estimates = main.estimates;
  out.k_value = combine_k(main.weights, main.wtheta, main.estimates);
  out.mean_steps = main.steps;

  if (opt.check_doubled) {
    const auto per_node = std::max<std::uint64_t>(
        1000, static_cast<std::uint64_t>(static_cast<double>(cfg.samples) * opt.doubled_budget_fraction));
    const NodeRun dbl = run_nodes(2 * opt.nodes, std::vector<std::uint64_t>(2 * n, per_node), cfg, opt.walk,
                                  streams::kQuadratureNode + 500);
    out.doubled_checked = true;
    out.k_doubled = combine_k(dbl.weights, dbl.wtheta, dbl.estimates);
    out.quadrature_error = std::abs(out.k_value.mean - out.k_doubled.mean);
    // A difference of two noisy estimates only signals truncation error
    // when it is statistically significant.
    out.quadrature_limited = out.quadrature_error > 3.0 * combined_stderr(out.k_value, out.k_doubled);
  }
  return out;
}

KLimitResult k_by_limit(std::span<const double> heights, const WalkConfig& cfg, const HalfPlaneOptions& opt) {
  cfg.validate();
  if (heights.empty()) throw ConfigError("height schedule is empty");
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (!(heights[i] > 0.0)) throw ConfigError("heights must be positive");
    if (i > 0 && !(heights[i] > heights[i - 1])) throw ConfigError("heights must be strictly increasing");
  }
  KLimitResult out;
  out.heights.assign(heights.begin(), heights.end());
  for (std::size_t i = 0; i < heights.size(); ++i) {
    out.estimates.push_back(exit_functional(heights[i], cfg, opt, streams::kLimitHeight + i));
  }
  for (std::size_t i = 1; i < heights.size(); ++i) {
    out.increments.push_back(out.estimates[i].mean - out.estimates[i - 1].mean);
    out.increment_stderr.push_back(combined_stderr(out.estimates[i], out.estimates[i - 1]));
  }
  out.terminal = out.estimates.back();
  return out;
}

}  // namespace dhm

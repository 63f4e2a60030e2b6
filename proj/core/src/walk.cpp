#include "dhm/walk.hpp"

#include <sstream>

#include "dhm/parallel.hpp"

namespace dhm {

void WalkConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("step radius h must be positive and finite");
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (chunk < 1) throw ConfigError("task chunk must be at least 1");
  if (!(max_censored_fraction >= 0.0)) throw ConfigError("censoring limit must be non-negative");
}

void check_failure_fraction(std::uint64_t failures, std::uint64_t n, double limit, bool geometry) {
  if (n == 0 || failures == 0) return;
  const double frac = static_cast<double>(failures) / static_cast<double>(n);
  if (frac > limit) {
    std::ostringstream os;
    os << (geometry ? "geometry failures" : "censored trajectories") << ": " << failures << " of " << n
       << " (fraction " << frac << " exceeds " << limit << ")";
    if (geometry) throw GeometryError(os.str());
    throw CensoringError(os.str());
  }
}

void check_step_against_reach(double h, const AnalyticDomain& dom) {
  if (h > dom.reach_estimate()) {
    std::ostringstream os;
    os << "step radius " << h << " exceeds the domain reach estimate " << dom.reach_estimate();
    throw ConfigError(os.str());
  }
}

namespace {

struct HalfPlaneTask {
  std::vector<double> overshoot;
  RunningMoments moments;
  std::uint64_t censored = 0;
  double steps = 0.0;
};

template <bool Store, bool Planar>
HalfPlaneTask halfplane_task(double y_units, double h, const WalkConfig& cfg, const HalfPlaneOptions& opt,
                             std::uint64_t key, const TaskPlan& plan, std::uint64_t task) {
  HalfPlaneTask out;
  if constexpr (Store) out.overshoot.reserve(plan.end(task) - plan.begin(task));
  for (std::uint64_t i = plan.begin(task); i < plan.end(task); ++i) {
    SplitMix64 rng = trajectory_rng(key, i);
    const HalfPlaneExit e = Planar ? halfplane_trajectory_2d(rng, y_units, cfg.max_steps)
                                   : halfplane_trajectory(rng, y_units, cfg.max_steps, opt);
    out.steps += static_cast<double>(e.steps);
    if (e.censored) {
      ++out.censored;
      continue;
    }
    const double v = h * e.overshoot;
    out.moments.push(v);
    if constexpr (Store) out.overshoot.push_back(v);
  }
  return out;
}

template <bool Store, bool Planar>
HalfPlaneRun halfplane_run(double start_height, const WalkConfig& cfg, const HalfPlaneOptions& opt,
                           std::uint64_t stream) {
  cfg.validate();
  if (!(start_height > 0.0) || !std::isfinite(start_height)) {
    throw ConfigError("half-plane start height must be positive");
  }
  const TaskPlan plan{cfg.samples, cfg.chunk};
  const std::uint64_t key = stream_key(cfg.seed, stream);
  const double y_units = start_height / cfg.h;
  auto parts = run_tasks<HalfPlaneTask>(plan.tasks(), cfg.threads, [&](std::uint64_t t) {
    return halfplane_task<Store, Planar>(y_units, cfg.h, cfg, opt, key, plan, t);
  });
  HalfPlaneRun run;
  RunningMoments total;
  double steps = 0.0;
  for (auto& p : parts) {
    total.merge(p.moments);
    run.censored += p.censored;
    steps += p.steps;
    if constexpr (Store) run.overshoot.insert(run.overshoot.end(), p.overshoot.begin(), p.overshoot.end());
  }
  check_failure_fraction(run.censored, cfg.samples, cfg.max_censored_fraction, false);
  run.estimate = total.estimate(run.censored);
  run.estimate.n = cfg.samples;
  run.mean_steps = steps / static_cast<double>(cfg.samples);
  return run;
}

}  // namespace

HalfPlaneRun run_halfplane_exit(double start_height, const WalkConfig& cfg, const HalfPlaneOptions& opt,
                                std::uint64_t stream) {
  return halfplane_run<true, false>(start_height, cfg, opt, stream);
}

MCEstimate halfplane_exit_mean(double start_height, const WalkConfig& cfg, const HalfPlaneOptions& opt,
                               std::uint64_t stream, double* mean_steps) {
  const HalfPlaneRun run = halfplane_run<false, false>(start_height, cfg, opt, stream);
  if (mean_steps) *mean_steps = run.mean_steps;
  return run.estimate;
}

HalfPlaneRun run_halfplane_exit_2d(double start_height, const WalkConfig& cfg, std::uint64_t stream) {
  return halfplane_run<true, true>(start_height, cfg, HalfPlaneOptions{false, 0.0}, stream);
}

DomainExitRun run_domain_exit(PlanePoint start, const AnalyticDomain& dom, const WalkConfig& cfg,
                              std::uint64_t stream) {
  cfg.validate();
  check_step_against_reach(cfg.h, dom);
  if (!start.finite() || !dom.inside(start)) throw ConfigError("start point must lie inside the domain");

  struct Part {
    std::vector<PlanePoint> exits;
    std::uint64_t censored = 0, failures = 0;
    double steps = 0.0;
  };
  const TaskPlan plan{cfg.samples, cfg.chunk};
  const std::uint64_t key = stream_key(cfg.seed, stream);
  auto parts = run_tasks<Part>(plan.tasks(), cfg.threads, [&](std::uint64_t t) {
    Part p;
    for (std::uint64_t i = plan.begin(t); i < plan.end(t); ++i) {
      SplitMix64 rng = trajectory_rng(key, i);
      const DomainTrajectory tr = walk_domain(rng, start, dom, cfg.h, cfg.max_steps);
      p.steps += static_cast<double>(tr.steps);
      if (tr.censored) {
        ++p.censored;
      } else if (tr.geometry_failure) {
        ++p.failures;
      } else {
        p.exits.push_back(tr.exit);
      }
    }
    return p;
  });
  DomainExitRun run;
  double steps = 0.0;
  for (auto& p : parts) {
    run.exits.insert(run.exits.end(), p.exits.begin(), p.exits.end());
    run.censored += p.censored;
    run.geometry_failures += p.failures;
    steps += p.steps;
  }
  check_failure_fraction(run.censored, cfg.samples, cfg.max_censored_fraction, false);
  check_failure_fraction(run.geometry_failures, cfg.samples, cfg.max_censored_fraction, true);
  run.mean_steps = steps / static_cast<double>(cfg.samples);
  return run;
}

}  // namespace dhm

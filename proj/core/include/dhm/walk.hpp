#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dhm/conformal_domain.hpp"
#include "dhm/errors.hpp"
#include "dhm/fast_sincos.hpp"
#include "dhm/plane.hpp"
#include "dhm/rng.hpp"
#include "dhm/stats.hpp"

namespace dhm {

struct WalkConfig {
  double h = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1;
  std::uint64_t max_steps = 10'000'000;
  unsigned threads = 1;
  std::uint64_t chunk = 1u << 14;  // trajectories per task
  double max_censored_fraction = 1e-6;

  void validate() const;
};

// Stream ids that keep experiments on disjoint RNG keys.
namespace streams {
inline constexpr std::uint64_t kHalfPlane = 1;
inline constexpr std::uint64_t kHalfPlane2d = 2;
inline constexpr std::uint64_t kDomainExit = 3;
inline constexpr std::uint64_t kQuadratureNode = 1000;  // + node index
inline constexpr std::uint64_t kLimitHeight = 5000;     // + schedule index
inline constexpr std::uint64_t kSweep = 9000;           // + h index
inline constexpr std::uint64_t kGreens = 12000;
inline constexpr std::uint64_t kPilot = 15000;
}  // namespace streams

// One 64-bit draw: high half picks the angle, low half the squared radius.
inline PlanePoint unit_disk_point(std::uint64_t bits) {
  const auto hi = static_cast<std::uint32_t>(bits >> 32);
  const auto lo = static_cast<std::uint32_t>(bits);
  const double r = std::sqrt((static_cast<double>(lo) + 0.5) * 0x1.0p-32);
  const auto [c, s] = kTurnSinCos(hi);
  return {r * c, r * s};
}

inline PlanePoint sample_step(SplitMix64& rng, double h) { return h * unit_disk_point(rng.next()); }

// Imaginary part of a unit-disk draw: semicircle law on [-1, 1].
inline double sample_im_increment(SplitMix64& rng) {
  const std::uint64_t bits = rng.next();
  const auto hi = static_cast<std::uint32_t>(bits >> 32);
  const auto lo = static_cast<std::uint32_t>(bits);
  const double r = std::sqrt((static_cast<double>(lo) + 0.5) * 0x1.0p-32);
  return r * kTurnSinCos(hi).s;
}

// Far-field regeneration for the vertical walk, in units of h. Once the
// height reaches ceiling = max(2 floor, y0 + floor) it is shifted down to
// floor. The exit functional is flat to below 1e-7 past height 4, so the
// shift does not change the overshoot law at that precision, while it makes
// the otherwise infinite-mean exit time finite.
struct HalfPlaneOptions {
  bool regenerate = true;
  double regen_floor = 8.0;
};

struct HalfPlaneExit {
  double overshoot = 0.0;  // |Im S_T| in units of h
  std::uint64_t steps = 0;
  bool censored = false;
};

inline HalfPlaneExit halfplane_trajectory(SplitMix64& rng, double y0, std::uint64_t max_steps,
                                          const HalfPlaneOptions& opt) {
  const double ceiling =
      opt.regenerate ? std::max(2.0 * opt.regen_floor, y0 + opt.regen_floor) : INFINITY;
  const double drop = ceiling - opt.regen_floor;
  double y = y0;
  std::uint64_t k = 0;
  while (y > 0.0) {
    if (k == max_steps) return {0.0, k, true};
    y += sample_im_increment(rng);
    ++k;
    if (y >= ceiling) y -= drop;
  }
  return {-y, k, false};
}

// Same exit problem with the full planar walk. Test oracle only.
inline HalfPlaneExit halfplane_trajectory_2d(SplitMix64& rng, double y0, std::uint64_t max_steps) {
  PlanePoint z{0.0, y0};
  std::uint64_t k = 0;
  while (z.im > 0.0) {
    if (k == max_steps) return {0.0, k, true};
    z += unit_disk_point(rng.next());
    ++k;
  }
  return {-z.im, k, false};
}

struct HalfPlaneRun {
  std::vector<double> overshoot;  // |Im S_T| per uncensored trajectory, in length units
  MCEstimate estimate;
  std::uint64_t censored = 0;
  double mean_steps = 0.0;
};

// Vertical reduction; start_height and results in length units (scaled by h).
HalfPlaneRun run_halfplane_exit(double start_height, const WalkConfig& cfg,
                                const HalfPlaneOptions& opt = {},
                                std::uint64_t stream = streams::kHalfPlane);

// Streaming mean only; no per-trajectory storage.
MCEstimate halfplane_exit_mean(double start_height, const WalkConfig& cfg,
                               const HalfPlaneOptions& opt, std::uint64_t stream,
                               double* mean_steps = nullptr);

HalfPlaneRun run_halfplane_exit_2d(double start_height, const WalkConfig& cfg,
                                   std::uint64_t stream = streams::kHalfPlane2d);

struct DomainTrajectory {
  PlanePoint exit;
  std::uint64_t steps = 0;
  bool censored = false;
  bool geometry_failure = false;
};

// Walk from start until the inside test fails. visit(z) sees every
// position S_0 .. S_{T-1}.
template <class Visitor>
DomainTrajectory walk_domain(SplitMix64& rng, PlanePoint start, const AnalyticDomain& dom, double h,
                             std::uint64_t max_steps, Visitor&& visit) {
  PlanePoint z = start;
  std::uint64_t k = 0;
  try {
    while (dom.inside(z)) {
      if (k == max_steps) return {z, k, true, false};
      visit(z);
      z += sample_step(rng, h);
      ++k;
    }
  } catch (const GeometryError&) {
    return {z, k, false, true};
  }
  return {z, k, false, false};
}

inline DomainTrajectory walk_domain(SplitMix64& rng, PlanePoint start, const AnalyticDomain& dom,
                                    double h, std::uint64_t max_steps) {
  return walk_domain(rng, start, dom, h, max_steps, [](PlanePoint) {});
}

struct DomainExitRun {
  std::vector<PlanePoint> exits;  // raw exit points of completed trajectories
  std::uint64_t censored = 0;
  std::uint64_t geometry_failures = 0;
  double mean_steps = 0.0;
};

DomainExitRun run_domain_exit(PlanePoint start, const AnalyticDomain& dom, const WalkConfig& cfg,
                              std::uint64_t stream = streams::kDomainExit);

// Fails loudly when the censored or failed fraction exceeds the limit.
void check_failure_fraction(std::uint64_t failures, std::uint64_t n, double limit, bool geometry);

// Rejects step radii too large for single-valued boundary projection.
void check_step_against_reach(double h, const AnalyticDomain& dom);

}  // namespace dhm

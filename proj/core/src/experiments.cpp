#include "dhm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "dhm/harmonic_extension.hpp"
#include "dhm/parallel.hpp"
#include "dhm/quadrature.hpp"

namespace dhm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace

// ---------------------------------------------------------------------------

DiscreteIntegralRun discrete_integral(const BoundaryFunction& g, const AnalyticDomain& dom,
                                      const WalkConfig& cfg, const DiscreteIntegralOptions& opt) {
  cfg.validate();
  check_step_against_reach(cfg.h, dom);
  const bool use_cv = opt.estimator == Estimator::control_variate && g.smooth();
  std::optional<HarmonicExtension> ext;
  if (use_cv) ext.emplace(g, dom, opt.cv_modes);
  const double u0 = use_cv ? ext->at_origin() : 0.0;

  struct Part {
    RunningMoments m;
    std::uint64_t censored = 0, failures = 0;
    double steps = 0.0;
  };
  const TaskPlan plan{cfg.samples, cfg.chunk};
  const std::uint64_t key = stream_key(cfg.seed, opt.stream);
  auto parts = run_tasks<Part>(plan.tasks(), cfg.threads, [&](std::uint64_t task) {
    Part p;
    for (std::uint64_t i = plan.begin(task); i < plan.end(task); ++i) {
      SplitMix64 rng = trajectory_rng(key, i);
      const DomainTrajectory tr = walk_domain(rng, PlanePoint{}, dom, cfg.h, cfg.max_steps);
      p.steps += static_cast<double>(tr.steps);
      if (tr.censored) {
        ++p.censored;
        continue;
      }
      if (tr.geometry_failure) {
        ++p.failures;
        continue;
      }
      try {
        const BoundaryProjection proj = dom.project_to_boundary(tr.exit);
        double y = g(proj.point);
        if (use_cv) y += u0 - (*ext)(dom.invert(tr.exit));
        p.m.push(y);
      } catch (const GeometryError&) {
        ++p.failures;
      }
    }
    return p;
  });

  RunningMoments total;
  DiscreteIntegralRun run;
  std::uint64_t censored = 0;
  double steps = 0.0;
  for (const Part& p : parts) {
    total.merge(p.m);
    censored += p.censored;
    run.geometry_failures += p.failures;
    steps += p.steps;
  }
  check_failure_fraction(censored, cfg.samples, cfg.max_censored_fraction, false);
  check_failure_fraction(run.geometry_failures, cfg.samples, cfg.max_censored_fraction, true);
  run.estimate = total.estimate(censored);
  run.estimate.n = cfg.samples;
  run.mean_steps = steps / static_cast<double>(cfg.samples);
  return run;
}

// ---------------------------------------------------------------------------

double projected_intercept_stderr(std::span<const double> h_values, std::span<const double> sample_sd,
                                  std::uint64_t budget, bool quadratic) {
  const int degree = h_values.size() == 1 ? 0 : (quadratic ? 2 : 1);
  std::vector<double> sigma(h_values.size()), zeros(h_values.size(), 0.0);
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    sigma[i] = std::max(sample_sd[i], 1e-300) / std::sqrt(static_cast<double>(budget)) / h_values[i];
  }
  return weighted_polyfit(h_values, zeros, sigma, degree).std_err[0];
}

SweepResult correction_sweep(const BoundaryFunction& g, const AnalyticDomain& dom, std::vector<double> h_values,
                             std::uint64_t budget, const WalkConfig& cfg, const SweepOptions& opt) {
  if (h_values.empty()) throw ConfigError("sweep needs at least one h value");
  std::sort(h_values.begin(), h_values.end(), std::greater<>());
  if (std::adjacent_find(h_values.begin(), h_values.end()) != h_values.end()) {
    throw ConfigError("sweep h values must be distinct");
  }
  for (double h : h_values) {
    if (!(h > 0.0)) throw ConfigError("sweep h values must be positive");
    check_step_against_reach(h, dom);
  }
  if (budget < 2) throw ConfigError("sweep budget must be at least 2 per h value");
  if (opt.quadratic && h_values.size() < 4) throw ConfigError("quadratic extrapolation needs at least 4 h values");

  SweepResult res;
  res.h_values = h_values;
  const DensityTable table = sigma_d(dom, opt.k_value, opt.density_grid);
  res.predicted_slope = predicted_slope(table, dom, g);
  res.exact_integral = continuous_integral(g, dom, opt.exact_nodes);

  if (opt.pilot_check && !g.is_constant_one()) {
    std::vector<double> sds;
    for (std::size_t i = 0; i < h_values.size(); ++i) {
      WalkConfig c = cfg;
      c.h = h_values[i];
      c.samples = std::min(opt.pilot_samples, budget);
      DiscreteIntegralOptions io = opt.integral;
      io.stream = streams::kPilot + 100 + i;
      const DiscreteIntegralRun pilot = discrete_integral(g, dom, c, io);
      sds.push_back(pilot.estimate.std_error * std::sqrt(static_cast<double>(c.samples)));
    }
    res.projected_slope_stderr = projected_intercept_stderr(h_values, sds, budget, opt.quadratic);
    const double need = 0.1 * std::abs(res.predicted_slope) + opt.slope_floor;
    if (res.projected_slope_stderr > need) {
      std::ostringstream os;
      os << "budget " << budget << " per h gives projected slope stderr " << res.projected_slope_stderr
         << ", above the resolution requirement " << need << " (0.1*|predicted| + floor)";
      throw BudgetInfeasible(os.str());
    }
  }

  for (std::size_t i = 0; i < h_values.size(); ++i) {
    WalkConfig c = cfg;
    c.h = h_values[i];
    c.samples = budget;
    DiscreteIntegralOptions io = opt.integral;
    io.stream = streams::kSweep + i;
    const DiscreteIntegralRun run = discrete_integral(g, dom, c, io);
    res.mc_integrals.push_back(run.estimate);
    res.ratios.push_back((run.estimate.mean - res.exact_integral) / c.h);
    res.ratio_stderr.push_back(run.estimate.std_error / c.h);
    res.geometry_failures += run.geometry_failures;
    res.censored += run.estimate.censored;
    res.mean_steps.push_back(run.mean_steps);
  }

  const int degree = h_values.size() == 1 ? 0 : (opt.quadratic ? 2 : 1);
  const bool weighted = std::all_of(res.ratio_stderr.begin(), res.ratio_stderr.end(), [](double s) { return s > 0.0; });
  std::vector<double> no_sigma;
  const LinearFit fit =
      weighted_polyfit(res.h_values, res.ratios, weighted ? std::span<const double>(res.ratio_stderr) : no_sigma, degree);
  res.fit_coefficients = fit.coef;
  res.fit_chi2 = fit.chi2;
  res.extrapolated_slope = {fit.coef[0], fit.std_err[0], budget * h_values.size(), res.censored};
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct BinLayout {
  double w = 0.0;
  std::int64_t half_x = 0, half_y = 0, nx = 0, ny = 0;

  std::int64_t index(PlanePoint z) const {
    const auto ix = static_cast<std::int64_t>(std::floor(z.re / w + 0.5)) + half_x;
    const auto iy = static_cast<std::int64_t>(std::floor(z.im / w + 0.5)) + half_y;
    if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return -1;
    return iy * nx + ix;
  }
  PlanePoint center(std::int64_t idx) const {
    return {static_cast<double>(idx % nx - half_x) * w, static_cast<double>(idx / nx - half_y) * w};
  }
};

struct ShellSpec {
  double lo = 0.0, hi = 0.0;
};

struct GreensPart {
  std::vector<std::uint64_t> sum, sumsq;
  std::vector<std::uint64_t> shell_sum, shell_sumsq;
  RunningMoments length;
  std::uint64_t censored = 0, failures = 0;
};

}  // namespace

GreensGrid greens_compare(const AnalyticDomain& dom, double h, std::uint64_t budget, double bin_width,
                          const WalkConfig& cfg, const GreensOptions& opt) {
  WalkConfig c = cfg;
  c.h = h;
  c.samples = budget;
  c.validate();
  check_step_against_reach(h, dom);
  if (!(bin_width >= 2.0 * h)) throw ConfigError("bin width must be at least 2h");

  BinLayout lay;
  lay.w = bin_width;
  const double ext_x = std::max(std::abs(dom.xmin()), std::abs(dom.xmax()));
  const double ext_y = std::max(std::abs(dom.ymin()), std::abs(dom.ymax()));
  lay.half_x = static_cast<std::int64_t>(std::ceil(ext_x / bin_width + 0.5));
  lay.half_y = static_cast<std::int64_t>(std::ceil(ext_y / bin_width + 0.5));
  lay.nx = 2 * lay.half_x + 1;
  lay.ny = 2 * lay.half_y + 1;
  const auto nbins = static_cast<std::size_t>(lay.nx * lay.ny);

  std::vector<ShellSpec> shells;
  if (opt.collar) {
    for (double lh : opt.collar_l_over_h) {
      const double lo = (lh - opt.collar_half_width) * h, hi = (lh + opt.collar_half_width) * h;
      if (!(lo >= 0.0) || !(hi < dom.reach_estimate())) throw ConfigError("collar shell outside [0, reach)");
      shells.push_back({lo, hi});
    }
  }
  double shell_max = 0.0;
  for (const ShellSpec& s : shells) shell_max = std::max(shell_max, s.hi);
  const double near_r = std::max(0.0, dom.inscribed_radius() - shell_max);
  const double near_r2 = near_r * near_r;

  const TaskPlan plan{budget, c.chunk};
  const std::uint64_t key = stream_key(c.seed, opt.stream);
  auto parts = run_tasks<GreensPart>(plan.tasks(), c.threads, [&](std::uint64_t task) {
    GreensPart p;
    p.sum.assign(nbins, 0);
    p.sumsq.assign(nbins, 0);
    p.shell_sum.assign(shells.size(), 0);
    p.shell_sumsq.assign(shells.size(), 0);
    std::vector<std::uint32_t> count(nbins, 0);
    std::vector<std::uint32_t> touched;
    std::vector<std::uint64_t> shell_count(shells.size(), 0);
    for (std::uint64_t i = plan.begin(task); i < plan.end(task); ++i) {
      SplitMix64 rng = trajectory_rng(key, i);
      auto visit = [&](PlanePoint z) {
        const std::int64_t b = lay.index(z);
        if (b >= 0) {
          if (count[static_cast<std::size_t>(b)]++ == 0) touched.push_back(static_cast<std::uint32_t>(b));
        }
        if (!shells.empty() && z.norm2() >= near_r2) {
          double l;
          if (dom.is_disk()) {
            l = dom.inscribed_radius() - z.abs();
          } else {
            const auto proj = dom.try_project(z);
            if (!proj) return;
            l = proj->l;
          }
          for (std::size_t s = 0; s < shells.size(); ++s) {
            if (l >= shells[s].lo && l < shells[s].hi) ++shell_count[s];
          }
        }
      };
      const DomainTrajectory tr = walk_domain(rng, PlanePoint{}, dom, h, c.max_steps, visit);
      if (tr.censored) ++p.censored;
      if (tr.geometry_failure) ++p.failures;
      p.length.push(static_cast<double>(tr.steps));
      for (std::uint32_t b : touched) {
        const std::uint64_t v = count[b];
        p.sum[b] += v;
        p.sumsq[b] += v * v;
        count[b] = 0;
      }
      touched.clear();
      for (std::size_t s = 0; s < shells.size(); ++s) {
        p.shell_sum[s] += shell_count[s];
        p.shell_sumsq[s] += shell_count[s] * shell_count[s];
        shell_count[s] = 0;
      }
    }
    return p;
  });

  std::vector<std::uint64_t> sum(nbins, 0), sumsq(nbins, 0);
  std::vector<std::uint64_t> shell_sum(shells.size(), 0), shell_sumsq(shells.size(), 0);
  GreensGrid out;
  out.h = h;
  out.bin_width = bin_width;
  std::uint64_t censored = 0;
  RunningMoments length;
  for (const GreensPart& p : parts) {
    for (std::size_t b = 0; b < nbins; ++b) {
      sum[b] += p.sum[b];
      sumsq[b] += p.sumsq[b];
    }
    for (std::size_t s = 0; s < shells.size(); ++s) {
      shell_sum[s] += p.shell_sum[s];
      shell_sumsq[s] += p.shell_sumsq[s];
    }
    censored += p.censored;
    out.geometry_failures += p.failures;
    length.merge(p.length);
  }
  check_failure_fraction(censored, budget, c.max_censored_fraction, false);
  check_failure_fraction(out.geometry_failures, budget, c.max_censored_fraction, true);
  out.trajectory_length = length.estimate(censored);

  const double n = static_cast<double>(budget);
  const double area = bin_width * bin_width;
  const double sqrt_h = std::sqrt(h);
  for (std::size_t b = 0; b < nbins; ++b) {
    const PlanePoint ctr = lay.center(static_cast<std::int64_t>(b));
    GreensBin bin;
    bin.x = ctr.re;
    bin.y = ctr.im;
    bin.area = area;
    bin.visits = sum[b];
    const double mean = static_cast<double>(sum[b]) / n;
    const double var = std::max(static_cast<double>(sumsq[b]) / n - mean * mean, 0.0);
    bin.gh_scaled = h * h * mean / area;
    bin.gh_stderr = h * h * std::sqrt(var / n) / area;
    out.occupation_mass += mean;

    const bool origin_bin = lay.index(PlanePoint{}) == static_cast<std::int64_t>(b);
    const bool center_inside = dom.inside(ctr);
    if (!center_inside && sum[b] == 0) continue;
    bin.gd8 = (center_inside && !origin_bin) ? 8.0 * dom.greens_gd(ctr) : std::numeric_limits<double>::quiet_NaN();
    bin.diff = bin.gh_scaled - bin.gd8;

    // Admissible: the whole square lies in D and stays beyond sqrt(h) of 0.
    const double dx = std::max(std::abs(ctr.re) - 0.5 * bin_width, 0.0);
    const double dy = std::max(std::abs(ctr.im) - 0.5 * bin_width, 0.0);
    bool adm = !origin_bin && center_inside && std::hypot(dx, dy) > sqrt_h;
    for (int i = 0; adm && i <= 4; ++i) {
      for (int j = 0; adm && j <= 4; ++j) {
        adm = dom.inside({ctr.re + (i / 4.0 - 0.5) * bin_width, ctr.im + (j / 4.0 - 0.5) * bin_width});
      }
    }
    bin.admissible = adm;
    if (adm) {
      ++out.admissible_bins;
      if (bin.visits < opt.min_visits) ++out.low_visit_bins;
      if (std::abs(bin.diff) > out.sup_diff) {
        out.sup_diff = std::abs(bin.diff);
        out.sup_stderr = bin.gh_stderr;
        out.sup_at = ctr;
      }
    }
    out.bins.push_back(bin);
  }

  // Collar shells against 8 G_D + 8 H_D h u(l/h), averaged over the shell
  // with the Jacobian (1 - l kappa)|gamma'| of the (t, l) coordinates.
  if (!shells.empty()) {
    const int nt = 512;
    const QuadratureRule lq = gauss_legendre(6, 0.0, 1.0);
    for (std::size_t s = 0; s < shells.size(); ++s) {
      const ShellSpec sh = shells[s];
      std::vector<MCEstimate> u(lq.nodes.size());
      for (std::size_t k = 0; k < lq.nodes.size(); ++k) {
        const double l = sh.lo + (sh.hi - sh.lo) * lq.nodes[k];
        WalkConfig hc = c;
        hc.h = 1.0;
        hc.samples = opt.halfplane_samples;
        u[k] = exit_functional(l / h, hc, {}, streams::kGreens + 100 + 10 * s + k);
      }
      double shell_area = 0.0, g_acc = 0.0, pred_acc = 0.0;
      std::vector<double> pred_coef(lq.nodes.size(), 0.0);
      for (int it = 0; it < nt; ++it) {
        const double t = kTwoPi * (it + 0.5) / nt;
        const PlanePoint x = dom.boundary_point(t);
        const PlanePoint nrm = dom.inward_normal(t);
        const double sp = dom.speed(t), kap = dom.curvature(t);
        const double hd = dom.poisson_hd(t);
        for (std::size_t k = 0; k < lq.nodes.size(); ++k) {
          const double l = sh.lo + (sh.hi - sh.lo) * lq.nodes[k];
          const double jac = (1.0 - l * kap) * sp * (kTwoPi / nt) * lq.weights[k] * (sh.hi - sh.lo);
          shell_area += jac;
          g_acc += jac * 8.0 * dom.greens_gd(x + l * nrm);
          pred_coef[k] += jac * 8.0 * hd * h;
        }
      }
      for (std::size_t k = 0; k < lq.nodes.size(); ++k) pred_acc += pred_coef[k] * u[k].mean;
      double pred_var = 0.0;
      for (std::size_t k = 0; k < lq.nodes.size(); ++k) {
        pred_var += std::pow(pred_coef[k] * u[k].std_error / shell_area, 2);
      }

      CollarRow row;
      row.l_over_h = opt.collar_l_over_h[s];
      row.l_lo = sh.lo;
      row.l_hi = sh.hi;
      row.visits = shell_sum[s];
      const double mean = static_cast<double>(shell_sum[s]) / n;
      const double var = std::max(static_cast<double>(shell_sumsq[s]) / n - mean * mean, 0.0);
      row.gh_scaled = h * h * mean / shell_area;
      row.gh_stderr = h * h * std::sqrt(var / n) / shell_area;
      row.gd8 = g_acc / shell_area;
      row.diff = row.gh_scaled - row.gd8;
      row.predicted = pred_acc / shell_area;
      row.predicted_stderr = std::sqrt(pred_var);
      row.relative_error = std::abs(row.diff - row.predicted) / std::abs(row.predicted);
      out.collar.push_back(row);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double HarmonicPolynomial::operator()(PlanePoint z) const {
  cplx acc = 0.0;
  const cplx w = z.complex();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * w + *it;
  return acc.real();
}

double HarmonicPolynomial::derivative(PlanePoint z, PlanePoint n) const {
  cplx acc = 0.0;
  const cplx w = z.complex();
  for (std::size_t k = a.size(); k-- > 1;) acc = acc * w + static_cast<double>(k) * a[k];
  return (acc * n.complex()).real();
}

HarmonicPolynomial HarmonicPolynomial::parse(std::string_view spec) {
  if (spec == "re_z") return {{0.0, 1.0}};
  if (spec == "im_z") return {{0.0, cplx(0.0, -1.0)}};
  if (spec == "re_z2") return {{0.0, 0.0, 1.0}};
  if (spec == "im_z2") return {{0.0, 0.0, cplx(0.0, -1.0)}};
  if (spec == "re_z3") return {{0.0, 0.0, 0.0, 1.0}};
  HarmonicPolynomial f;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    f.a.push_back(parse_complex(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return f;
}

double boundary_layer_bracket(double l, double h) {
  const double r = std::sqrt(std::max(h * h - l * l, 0.0));
  return (2.0 / 3.0) * h * h * r + (l * l / 3.0) * r - l * h * h * std::acos(std::clamp(l / h, -1.0, 1.0));
}

namespace {

struct LayerGeometry {
  const AnalyticDomain& dom;
  const HarmonicPolynomial& f;
  PlanePoint z;
  PlanePoint normal;
  double l, h;

  // Signed distance along the ray, positive inside; far points count as
  // outside.
  double signed_distance(PlanePoint y) const {
    const auto p = dom.try_project(y);
    if (p) return p->l;
    return dom.inside(y) ? h : -h;
  }

  // Extent of the inside part of the ray from z in direction alpha.
  double inside_extent(double alpha) const {
    const PlanePoint e{std::cos(alpha), std::sin(alpha)};
    auto s = [&](double r) { return signed_distance(z + r * e); };
    double lo = 0.0;
    if (l <= 0.0) {
      if (e.re * normal.re + e.im * normal.im <= 0.0) return 0.0;
      lo = 1e-9 * h;
      if (s(lo) <= 0.0) return 0.0;
    }
    if (s(h) >= 0.0) return h;
    boost::uintmax_t iters = 100;
    const auto root = boost::math::tools::toms748_solve(
        s, lo, h, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (root.first + root.second);
  }

  double extended(PlanePoint y) const {
    if (dom.inside(y)) return f(y);
    return f(dom.project_to_boundary(y).point);
  }
};

// Directions from z to the boundary points at distance exactly h.
std::vector<double> crossing_directions(const AnalyticDomain& dom, const BoundaryProjection& base, PlanePoint z,
                                        double h) {
  std::vector<double> out;
  auto gap = [&](double t) { return (dom.boundary_point(t) - z).abs() - h; };
  const double dt = 0.125 * h / dom.speed(base.t);
  for (int side : {-1, 1}) {
    double a = base.t, b = base.t;
    for (int k = 0; k < 400; ++k) {
      b = a + side * dt;
      if (gap(b) >= 0.0) break;
      a = b;
    }
    if (gap(b) < 0.0) throw QuadratureError("could not bracket the boundary crossing");
    double lo = std::min(a, b), hi = std::max(a, b);
    boost::uintmax_t iters = 100;
    const auto root = boost::math::tools::toms748_solve(gap, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    const PlanePoint q = dom.boundary_point(0.5 * (root.first + root.second));
    out.push_back(std::atan2(q.im - z.im, q.re - z.re));
  }
  return out;
}

double layer_quadrature(const LayerGeometry& geo, const std::vector<double>& cuts, int n_alpha, int n_r) {
  const QuadratureRule qa = gauss_legendre(n_alpha, 0.0, 1.0);
  const QuadratureRule qr = gauss_legendre(n_r, 0.0, 1.0);
  const double fz = geo.f(geo.z);
  double total = 0.0;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double a0 = cuts[k];
    const double a1 = k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + kTwoPi;
    for (std::size_t i = 0; i < qa.nodes.size(); ++i) {
      const double alpha = a0 + (a1 - a0) * qa.nodes[i];
      const PlanePoint e{std::cos(alpha), std::sin(alpha)};
      const double rs = geo.inside_extent(alpha);
      double ray = 0.0;
      if (rs > 0.0) {
        for (std::size_t j = 0; j < qr.nodes.size(); ++j) {
          const double r = rs * qr.nodes[j];
          ray += rs * qr.weights[j] * r * (geo.f(geo.z + r * e) - fz);
        }
      }
      if (rs < geo.h) {
        for (std::size_t j = 0; j < qr.nodes.size(); ++j) {
          const double r = rs + (geo.h - rs) * qr.nodes[j];
          ray += (geo.h - rs) * qr.weights[j] * r * (geo.extended(geo.z + r * e) - fz);
        }
      }
      total += (a1 - a0) * qa.weights[i] * ray;
    }
  }
  return total / (kPi * geo.h * geo.h);
}

}  // namespace

BoundaryLayerResult boundary_layer_laplacian(const AnalyticDomain& dom, const HarmonicPolynomial& f, double t,
                                             double l, double h, double tolerance) {
  if (!(h > 0.0) || !(l >= 0.0) || !(l <= h)) throw ConfigError("boundary layer check needs 0 <= l <= h, h > 0");
  check_step_against_reach(h, dom);
  if (f.a.empty()) throw ConfigError("empty harmonic polynomial");

  BoundaryProjection base;
  base.t = t;
  base.point = dom.boundary_point(t);
  base.normal = dom.inward_normal(t);
  base.l = 0.0;
  const PlanePoint z = base.point + l * base.normal;
  LayerGeometry geo{dom, f, z, base.normal, l, h};

  std::vector<double> cuts;
  if (l < h) {
    cuts = crossing_directions(dom, base, z, h);
    if (l == 0.0) {
      const double tangent = std::atan2(-base.normal.re, base.normal.im);
      cuts.push_back(tangent);
      cuts.push_back(tangent + kPi);
    }
  } else {
    cuts.push_back(0.0);
  }
  for (double& c : cuts) {
    c = std::fmod(c, kTwoPi);
    if (c < 0.0) c += kTwoPi;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  const double coarse = layer_quadrature(geo, cuts, 32, 16);
  const double fine = layer_quadrature(geo, cuts, 64, 32);

  BoundaryLayerResult r;
  r.h = h;
  r.l = l;
  r.numeric = fine;
  r.quadrature_error = std::abs(fine - coarse);
  r.dfdn = f.derivative(base.point, base.normal);
  r.bracket = boundary_layer_bracket(l, h);
  r.formula = r.dfdn * r.bracket / (kPi * h * h);
  r.diff = r.numeric - r.formula;
  if (r.quadrature_error > tolerance) {
    std::ostringstream os;
    os << "boundary layer quadrature error " << r.quadrature_error << " exceeds tolerance " << tolerance;
    throw QuadratureError(os.str());
  }
  return r;
}

}  // namespace dhm

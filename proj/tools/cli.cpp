#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhm/boundary_function.hpp"
#include "dhm/conformal_domain.hpp"
#include "dhm/correction_density.hpp"
#include "dhm/errors.hpp"
#include "dhm/experiments.hpp"
#include "dhm/halfplane_k.hpp"
#include "dhm/parallel.hpp"
#include "dhm/potential_kernel.hpp"
#include "dhm/walk.hpp"

#ifndef DHM_VERSION
#define DHM_VERSION "unknown"
#endif

namespace dhm::cli {

namespace {

using ojson = nlohmann::ordered_json;
using Cell = std::variant<double, std::uint64_t, std::string>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  return std::get<std::string>(c);
}

ojson cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? ojson(*d) : ojson(nullptr);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
  return std::get<std::string>(c);
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + ": not a number: " + text);
  }
  if (used != text.size() || !std::isfinite(v) || v < 1.0 || v != std::floor(v) || v > 9.0e18) {
    throw ConfigError(std::string(what) + ": expected a positive integer count, got " + text);
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(out.back())) {
      throw ConfigError(std::string(what) + ": bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open output file " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Flags shared by every subcommand.
struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  bool deterministic = false;
  std::string max_steps = "1e7";
  std::string chunk = "16384";

  void add_to(CLI::App* app) {
    // "-h" would collide with the step radius flag "--h".
    app->set_help_flag("--help", "print this help message and exit");
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
    app->add_option("--out", out, "output path; the summary goes to PATH.summary.json");
    app->add_option("--format", format, "data format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app->add_flag("--deterministic", deterministic, "omit timestamps from headers");
    app->add_option("--max-steps", max_steps, "step cap per trajectory")->capture_default_str();
    app->add_option("--chunk", chunk, "trajectories per task")->capture_default_str();
  }

  WalkConfig walk() const {
    WalkConfig c;
    c.seed = seed;
    c.threads = threads;
    c.max_steps = parse_count(max_steps, "--max-steps");
    c.chunk = parse_count(chunk, "--chunk");
    return c;
  }

  ojson echo() const {
    ojson j;
    j["seed"] = seed;
    j["format"] = format;
    j["deterministic"] = deterministic;
    j["max_steps"] = parse_count(max_steps, "--max-steps");
    j["chunk"] = parse_count(chunk, "--chunk");
    return j;
  }
};

void emit(const std::string& command, const Common& common, ojson config, const Table& table, ojson summary) {
  ojson header;
  header["program"] = "dhm";
  header["version"] = version();
  header["command"] = command;
  header["config"] = std::move(config);
  if (!common.deterministic) header["generated"] = utc_timestamp();

  std::string data;
  if (common.format == "csv") {
    std::ostringstream os;
    os << "# dhm " << version() << ' ' << command << '\n';
    os << "# config " << header["config"].dump() << '\n';
    if (!common.deterministic) os << "# generated " << header["generated"].get<std::string>() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
      os << '\n';
    }
    data = os.str();
  } else {
    ojson doc;
    doc["header"] = header;
    doc["columns"] = table.columns;
    doc["rows"] = ojson::array();
    for (const auto& row : table.rows) {
      ojson r = ojson::array();
      for (const Cell& c : row) r.push_back(cell_json(c));
      doc["rows"].push_back(std::move(r));
    }
    data = doc.dump(2) + "\n";
  }

  ojson sdoc;
  sdoc["header"] = header;
  // Results do not depend on the thread count, so it stays out of the data header.
  sdoc["header"]["threads"] = resolve_threads(common.threads);
  sdoc["summary"] = std::move(summary);
  const std::string sdata = sdoc.dump(2) + "\n";

  if (common.out.empty()) {
    std::cout << data;
    std::cerr << sdata;
  } else {
    write_atomic(common.out, data);
    write_atomic(common.out + ".summary.json", sdata);
  }
}

ojson estimate_json(const MCEstimate& e) {
  ojson j;
  j["mean"] = finite_or_null(e.mean);
  j["stderr"] = finite_or_null(e.std_error);
  j["n"] = e.n;
  j["censored"] = e.censored;
  return j;
}

// ---------------------------------------------------------------------------

struct KConstantArgs {
  Common common;
  int nodes = 32;
  std::string samples = "1e6";
  bool no_check = false;
  bool reallocate = false;
  std::string pilot = "1e5";
  bool no_regenerate = false;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--nodes", nodes, "Gauss-Legendre nodes on [0, pi/2]")->capture_default_str();
    app->add_option("--samples-per-node", samples, "trajectories per node (total when reallocating)")
        ->capture_default_str();
    app->add_flag("--no-quadrature-check", no_check, "skip the 2N-node comparison");
    app->add_flag("--reallocate", reallocate, "Neyman allocation after a pilot run");
    app->add_option("--pilot-samples", pilot, "pilot trajectories per node")->capture_default_str();
    app->add_flag("--no-regenerate", no_regenerate, "disable far-field regeneration");
  }

  void run() const {
    if (nodes < 8) throw ConfigError("--nodes must be at least 8");
    WalkConfig cfg = common.walk();
    cfg.h = 1.0;
    cfg.samples = parse_count(samples, "--samples-per-node");
    KQuadratureOptions opt;
    opt.nodes = nodes;
    opt.check_doubled = !no_check;
    opt.reallocate = reallocate;
    opt.pilot_samples = parse_count(pilot, "--pilot-samples");
    opt.walk.regenerate = !no_regenerate;

    ojson config = common.echo();
    config["nodes"] = nodes;
    config["samples_per_node"] = cfg.samples;
    config["quadrature_check"] = opt.check_doubled;
    config["reallocate"] = reallocate;
    if (reallocate) config["pilot_samples"] = opt.pilot_samples;
    config["regenerate"] = opt.walk.regenerate;

    const KBreakdown k = k_by_quadrature(opt, cfg);
    Table t{{"theta", "weight", "wtheta", "estimate", "stderr", "n"}, {}};
    std::uint64_t censored = 0;
    for (std::size_t j = 0; j < k.node_angles.size(); ++j) {
      const MCEstimate& e = k.node_estimates[j];
      t.rows.push_back({k.node_angles[j], k.node_weights[j], k.node_integrand_weights[j], e.mean, e.std_error, e.n});
      censored += e.censored;
    }
    t.rows.push_back({std::string("K"), std::string(), std::string(), k.k_value.mean, k.k_value.std_error,
                      k.k_value.n});

    ojson s;
    s["k_value"] = k.k_value.mean;
    s["k_stderr"] = k.k_value.std_error;
    s["reference_k"] = kReferenceK;
    s["constant_term"] = k.constant_term;
    s["quadrature_checked"] = k.doubled_checked;
    if (k.doubled_checked) {
      s["k_doubled"] = k.k_doubled.mean;
      s["k_doubled_stderr"] = k.k_doubled.std_error;
      s["quadrature_error"] = k.quadrature_error;
      s["quadrature_limited"] = k.quadrature_limited;
      if (k.quadrature_limited) std::cerr << "warning: K estimate is quadrature-limited\n";
    }
    s["mean_steps"] = k.mean_steps;
    s["censored"] = censored;
    emit("k-constant", common, std::move(config), t, std::move(s));
  }
};

struct KLimitArgs {
  Common common;
  std::string heights = "1,2,4,8,16,32";
  std::string samples = "1e6";
  bool no_regenerate = false;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--heights", heights, "increasing start heights y")->capture_default_str();
    app->add_option("--samples", samples, "trajectories per height")->capture_default_str();
    app->add_flag("--no-regenerate", no_regenerate, "disable far-field regeneration");
  }

  void run() const {
    const std::vector<double> ys = parse_list(heights, "--heights");
    WalkConfig cfg = common.walk();
    cfg.h = 1.0;
    cfg.samples = parse_count(samples, "--samples");
    HalfPlaneOptions opt;
    opt.regenerate = !no_regenerate;

    ojson config = common.echo();
    config["heights"] = ys;
    config["samples"] = cfg.samples;
    config["regenerate"] = opt.regenerate;

    const KLimitResult r = k_by_limit(ys, cfg, opt);
    Table t{{"y", "estimate", "stderr", "n", "increment", "increment_stderr"}, {}};
    for (std::size_t i = 0; i < r.heights.size(); ++i) {
      const double inc = i ? r.increments[i - 1] : kNaN;
      const double inc_se = i ? r.increment_stderr[i - 1] : kNaN;
      t.rows.push_back({r.heights[i], r.estimates[i].mean, r.estimates[i].std_error, r.estimates[i].n, inc, inc_se});
    }
    ojson s;
    s["terminal"] = estimate_json(r.terminal);
    s["k_value"] = r.terminal.mean;
    s["reference_k"] = kReferenceK;
    emit("k-limit", common, std::move(config), t, std::move(s));
  }
};

struct PotentialArgs {
  Common common;
  std::string radii = "20,25,30,40,50,60,70,80,90,100";
  std::string delta;
  double r_max = 200.0;
  double tail_tol = 1e-8;
  int panel_nodes = 24;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--radii", radii, "increasing |x| values for the C0 fit")->capture_default_str();
    app->add_option("--delta", delta, "|x| values for the discrete Laplacian identity check");
    app->add_option("--r-max", r_max, "first truncation radius")->capture_default_str();
    app->add_option("--tail-tol", tail_tol, "tail tolerance")->capture_default_str();
    app->add_option("--panel-nodes", panel_nodes, "Gauss-Legendre nodes per panel")->capture_default_str();
  }

  void run() const {
    const std::vector<double> rs = parse_list(radii, "--radii");
    KernelQuadrature q;
    q.r_max = r_max;
    q.tail_tol = tail_tol;
    q.nodes_per_panel = panel_nodes;

    ojson config = common.echo();
    config["radii"] = rs;
    config["r_max"] = r_max;
    config["tail_tol"] = tail_tol;
    config["panel_nodes"] = panel_nodes;

    const PotentialProfile p = fit_c0(rs, q);
    Table t{{"r", "a", "residual"}, {}};
    for (std::size_t i = 0; i < p.radii.size(); ++i) t.rows.push_back({p.radii[i], p.a_values[i], p.residuals[i]});

    ojson s;
    s["c0_hat"] = p.c0_hat;
    s["c0_ci"] = p.c0_ci;
    s["decay_coef"] = p.decay_coef;
    s["decay_ci"] = p.decay_ci;
    s["max_fit_residual"] = p.max_fit_residual;
    s["reference_c0"] = kReferenceC0;
    if (!delta.empty()) {
      const std::vector<double> ds = parse_list(delta, "--delta");
      config["delta"] = ds;
      ojson arr = ojson::array();
      for (double d : ds) arr.push_back({{"r", d}, {"deviation", check_delta_identity({d, 0.0}, q)}});
      s["delta_identity"] = std::move(arr);
    }
    emit("potential", common, std::move(config), t, std::move(s));
  }
};

struct DensityArgs {
  Common common;
  std::string domain = "1,0.2";
  int grid = 512;
  double k = kReferenceK;
  std::string g;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--domain", domain, "map coefficients or a built-in name")->capture_default_str();
    app->add_option("--grid", grid, "angles N (even, >= 64)")->capture_default_str();
    app->add_option("--k", k, "constant K")->capture_default_str();
    app->add_option("--g", g, "boundary function for the predicted slope");
  }

  void run() const {
    const AnalyticDomain dom = AnalyticDomain::parse(domain);
    if (!(k > 0.0)) throw ConfigError("--k must be positive");
    ojson config = common.echo();
    config["domain"] = dom.describe();
    config["grid"] = grid;
    config["k"] = k;

    const DensityTable tab = sigma_d(dom, k, grid);
    Table t{{"phi", "m", "rho", "sigma"}, {}};
    double mass = 0.0, max_rho = 0.0;
    for (std::size_t i = 0; i < tab.grid.size(); ++i) {
      t.rows.push_back({tab.grid[i], tab.m_values[i], tab.rho_values[i], tab.sigma_values[i]});
      mass += tab.rho_values[i];
      max_rho = std::max(max_rho, std::abs(tab.rho_values[i]));
    }
    ojson s;
    s["grid_size"] = tab.grid_size;
    s["k_value"] = tab.k_value;
    s["total_mass"] = mass * 2.0 * std::numbers::pi / tab.grid_size;
    s["max_abs_rho"] = max_rho;
    s["resolution_gap"] = tab.resolution_gap;
    s["under_resolved"] = tab.under_resolved;
    s["reach_estimate"] = dom.reach_estimate();
    if (tab.under_resolved) std::cerr << "warning: density grid is under-resolved\n";
    if (!g.empty()) {
      const BoundaryFunction fn = BoundaryFunction::parse(g);
      config["g"] = fn.name();
      s["predicted_slope"] = predicted_slope(tab, dom, fn);
      s["exact_integral"] = continuous_integral(fn, dom);
    }
    emit("density", common, std::move(config), t, std::move(s));
  }
};

struct SweepArgs {
  Common common;
  std::string domain = "1,0.2";
  std::string g = "re2";
  std::string h = "0.08,0.04,0.02";
  std::string budget = "2e7";
  std::string estimator = "cv";
  bool quadratic = false;
  bool no_pilot = false;
  std::string pilot = "2e4";
  double k = kReferenceK;
  double slope_floor = 1e-3;
  int cv_modes = 64;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--domain", domain, "map coefficients or a built-in name")->capture_default_str();
    app->add_option("--g", g, "boundary function")->capture_default_str();
    app->add_option("--h", h, "step radii")->capture_default_str();
    app->add_option("--budget", budget, "trajectories per h value")->capture_default_str();
    app->add_option("--estimator", estimator, "cv (harmonic control variate) or plain")
        ->check(CLI::IsMember({"cv", "plain"}))
        ->capture_default_str();
    app->add_option("--cv-modes", cv_modes, "Fourier modes of the control variate")->capture_default_str();
    app->add_flag("--quadratic", quadratic, "fit ratio = s + b h + c h^2 (needs 4 h values)");
    app->add_flag("--no-pilot", no_pilot, "skip the budget feasibility pilot");
    app->add_option("--pilot-samples", pilot, "pilot trajectories per h")->capture_default_str();
    app->add_option("--k", k, "constant K")->capture_default_str();
    app->add_option("--slope-floor", slope_floor, "absolute slope resolution floor")->capture_default_str();
  }

  void run() const {
    const AnalyticDomain dom = AnalyticDomain::parse(domain);
    const BoundaryFunction fn = BoundaryFunction::parse(g);
    const std::vector<double> hs = parse_list(h, "--h");
    const std::uint64_t n = parse_count(budget, "--budget");
    SweepOptions opt;
    opt.integral.estimator = estimator == "plain" ? Estimator::plain : Estimator::control_variate;
    opt.integral.cv_modes = cv_modes;
    opt.quadratic = quadratic;
    opt.pilot_check = !no_pilot;
    opt.pilot_samples = parse_count(pilot, "--pilot-samples");
    opt.k_value = k;
    opt.slope_floor = slope_floor;

    ojson config = common.echo();
    config["domain"] = dom.describe();
    config["g"] = fn.name();
    config["h"] = hs;
    config["budget"] = n;
    config["estimator"] = estimator;
    config["cv_modes"] = cv_modes;
    config["quadratic"] = quadratic;
    config["pilot"] = opt.pilot_check;
    config["pilot_samples"] = opt.pilot_samples;
    config["k"] = k;
    config["slope_floor"] = slope_floor;

    const SweepResult r = correction_sweep(fn, dom, hs, n, common.walk(), opt);
    Table t{{"h", "mc", "mc_stderr", "exact", "ratio", "ratio_stderr"}, {}};
    for (std::size_t i = 0; i < r.h_values.size(); ++i) {
      t.rows.push_back({r.h_values[i], r.mc_integrals[i].mean, r.mc_integrals[i].std_error, r.exact_integral,
                        r.ratios[i], r.ratio_stderr[i]});
    }
    ojson s;
    s["extrapolated_slope"] = r.extrapolated_slope.mean;
    s["extrapolated_slope_stderr"] = r.extrapolated_slope.std_error;
    s["predicted_slope"] = r.predicted_slope;
    s["exact_integral"] = r.exact_integral;
    s["fit_coefficients"] = r.fit_coefficients;
    s["fit_chi2"] = r.fit_chi2;
    s["projected_slope_stderr"] = r.projected_slope_stderr;
    s["k_value"] = k;
    s["geometry_failures"] = r.geometry_failures;
    s["censored"] = r.censored;
    s["mean_steps"] = r.mean_steps;
    emit("sweep", common, std::move(config), t, std::move(s));
  }
};

struct GreensArgs {
  Common common;
  std::string domain = "disk";
  double h = 0.05;
  std::string budget = "1e5";
  double bin_width = 0.1;
  std::string collar = "0.5";
  bool no_collar = false;
  std::string halfplane = "1e6";
  std::string min_visits = "100";

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--domain", domain, "map coefficients or a built-in name")->capture_default_str();
    app->add_option("--h", h, "step radius")->capture_default_str();
    app->add_option("--budget", budget, "trajectories")->capture_default_str();
    app->add_option("--bin-width", bin_width, "square bin side (>= 2h)")->capture_default_str();
    app->add_option("--collar-l", collar, "collar shell centers in units of h")->capture_default_str();
    app->add_flag("--no-collar", no_collar, "skip the boundary collar comparison");
    app->add_option("--halfplane-samples", halfplane, "half-plane trajectories per collar node")
        ->capture_default_str();
    app->add_option("--min-visits", min_visits, "warn below this many visits per bin")->capture_default_str();
  }

  void run() const {
    const AnalyticDomain dom = AnalyticDomain::parse(domain);
    const std::uint64_t n = parse_count(budget, "--budget");
    GreensOptions opt;
    opt.collar = !no_collar;
    if (opt.collar) opt.collar_l_over_h = parse_list(collar, "--collar-l");
    opt.halfplane_samples = parse_count(halfplane, "--halfplane-samples");
    opt.min_visits = parse_count(min_visits, "--min-visits");

    ojson config = common.echo();
    config["domain"] = dom.describe();
    config["h"] = h;
    config["budget"] = n;
    config["bin_width"] = bin_width;
    config["collar"] = opt.collar;
    if (opt.collar) {
      config["collar_l_over_h"] = opt.collar_l_over_h;
      config["halfplane_samples"] = opt.halfplane_samples;
    }
    config["min_visits"] = opt.min_visits;

    const GreensGrid gg = greens_compare(dom, h, n, bin_width, common.walk(), opt);
    Table t{{"x", "y", "gh_scaled", "gd8", "diff", "visits"}, {}};
    for (const GreensBin& b : gg.bins) t.rows.push_back({b.x, b.y, b.gh_scaled, b.gd8, b.diff, b.visits});

    ojson s;
    s["sup_diff"] = gg.sup_diff;
    s["sup_stderr"] = gg.sup_stderr;
    s["sup_at"] = {gg.sup_at.re, gg.sup_at.im};
    s["admissible_bins"] = gg.admissible_bins;
    s["low_visit_bins"] = gg.low_visit_bins;
    s["occupation_mass"] = gg.occupation_mass;
    s["trajectory_length"] = estimate_json(gg.trajectory_length);
    s["geometry_failures"] = gg.geometry_failures;
    ojson rows = ojson::array();
    for (const CollarRow& c : gg.collar) {
      rows.push_back({{"l_over_h", c.l_over_h},
                      {"l_lo", c.l_lo},
                      {"l_hi", c.l_hi},
                      {"gh_scaled", c.gh_scaled},
                      {"gh_stderr", c.gh_stderr},
                      {"gd8", c.gd8},
                      {"diff", c.diff},
                      {"predicted", c.predicted},
                      {"predicted_stderr", c.predicted_stderr},
                      {"relative_error", finite_or_null(c.relative_error)},
                      {"visits", c.visits}});
    }
    s["collar"] = std::move(rows);
    if (gg.low_visit_bins > 0) {
      std::cerr << "warning: " << gg.low_visit_bins << " admissible bins have fewer than " << opt.min_visits
                << " visits\n";
    }
    emit("greens", common, std::move(config), t, std::move(s));
  }
};

struct BlayerArgs {
  Common common;
  std::string domain = "disk";
  std::string f = "re_z2";
  double t = 0.0;
  std::string h = "0.1,0.05";
  std::string l_over_h = "0,0.5,1";
  double tolerance = 1e-9;

  void add(CLI::App* app) {
    common.add_to(app);
    app->add_option("--domain", domain, "map coefficients or a built-in name")->capture_default_str();
    app->add_option("--f", f, "harmonic polynomial")->capture_default_str();
    app->add_option("--t", t, "boundary angle of x")->capture_default_str();
    app->add_option("--h", h, "step radii")->capture_default_str();
    app->add_option("--l-over-h", l_over_h, "offsets l/h in [0, 1]")->capture_default_str();
    app->add_option("--tolerance", tolerance, "quadrature tolerance")->capture_default_str();
  }

  void run() const {
    const AnalyticDomain dom = AnalyticDomain::parse(domain);
    const HarmonicPolynomial poly = HarmonicPolynomial::parse(f);
    const std::vector<double> hs = parse_list(h, "--h");
    const std::vector<double> ls = parse_list(l_over_h, "--l-over-h");

    ojson config = common.echo();
    config["domain"] = dom.describe();
    config["f"] = f;
    config["t"] = t;
    config["h"] = hs;
    config["l_over_h"] = ls;
    config["tolerance"] = tolerance;

    Table tab{{"h", "l", "numeric", "formula", "diff"}, {}};
    ojson ratios = ojson::array();
    for (double lh : ls) {
      std::vector<double> diffs;
      for (double hv : hs) {
        const BoundaryLayerResult r = boundary_layer_laplacian(dom, poly, t, lh * hv, hv, tolerance);
        tab.rows.push_back({r.h, r.l, r.numeric, r.formula, r.diff});
        diffs.push_back(r.diff);
      }
      ojson rs = ojson::array();
      for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        rs.push_back(diffs[i] != 0.0 ? finite_or_null(std::abs(diffs[i + 1] / diffs[i])) : ojson(nullptr));
      }
      ratios.push_back({{"l_over_h", lh}, {"error_ratios", std::move(rs)}});
    }
    ojson s;
    s["error_ratios"] = std::move(ratios);
    emit("blayer", common, std::move(config), tab, std::move(s));
  }
};

}  // namespace

std::string version() { return DHM_VERSION; }

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Continuous-state random walk: harmonic measure corrections and kernel checks", "dhm"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print this help message and exit");
  app.set_version_flag("--version", version());

  KConstantArgs kc;
  KLimitArgs kl;
  PotentialArgs pot;
  DensityArgs den;
  SweepArgs sw;
  GreensArgs gr;
  BlayerArgs bl;
  CLI::App* c_kc = app.add_subcommand("k-constant", "K by Gauss-Legendre quadrature of the half-plane functional");
  CLI::App* c_kl = app.add_subcommand("k-limit", "half-plane exit functional at increasing start heights");
  CLI::App* c_pot = app.add_subcommand("potential", "potential kernel profile and C0 fit");
  CLI::App* c_den = app.add_subcommand("density", "correction density rho and sigma on a grid");
  CLI::App* c_sw = app.add_subcommand("sweep", "correction slope sweep over step radii");
  CLI::App* c_gr = app.add_subcommand("greens", "occupation density against 8 G_D");
  CLI::App* c_bl = app.add_subcommand("blayer", "boundary-layer generator check");
  kc.add(c_kc);
  kl.add(c_kl);
  pot.add(c_pot);
  den.add(c_den);
  sw.add(c_sw);
  gr.add(c_gr);
  bl.add(c_bl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (c_kc->parsed()) kc.run();
    else if (c_kl->parsed()) kl.run();
    else if (c_pot->parsed()) pot.run();
    else if (c_den->parsed()) den.run();
    else if (c_sw->parsed()) sw.run();
    else if (c_gr->parsed()) gr.run();
    else if (c_bl->parsed()) bl.run();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetInfeasible& e) {
    std::cerr << "budget infeasible: " << e.what() << '\n';
    return kBudgetInfeasible;
  } catch (const GeometryError& e) {
    std::cerr << "geometry failure: " << e.what() << '\n';
    return kGeometryFailure;
  } catch (const CensoringError& e) {
    std::cerr << "censoring failure: " << e.what() << '\n';
    return kGeometryFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace dhm::cli

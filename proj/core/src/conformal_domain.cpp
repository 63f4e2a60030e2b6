#include "dhm/conformal_domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx horner(const std::vector<cplx>& p, cplx w) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * w + *it;
  return acc;
}

std::vector<cplx> differentiate(const std::vector<cplx>& p) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double cross(PlanePoint a, PlanePoint b) { return a.re * b.im - a.im * b.re; }

bool segments_intersect(PlanePoint a, PlanePoint b, PlanePoint c, PlanePoint d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view context) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("cannot parse number '" + std::string(s) + "' in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.remove_suffix(1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string_view p) {
    p = trim(p);
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    return parse_real(p, text);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split), text), imag_part(s.substr(split))};
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) {
    if (z.imag() >= 0.0) os << '+';
    os << z.imag() << 'i';
  }
  return os.str();
}

AnalyticDomain::AnalyticDomain(std::vector<cplx> coeffs) : AnalyticDomain(std::move(coeffs), Options{}) {}

AnalyticDomain::AnalyticDomain(std::vector<cplx> coeffs, Options opts)
    : coeffs_(std::move(coeffs)), opts_(opts) {
  if (opts_.boundary_samples < 256 || opts_.grid_cells < 64) {
    throw ConfigError("domain cache resolution too small");
  }
  validate_coefficients();
  std::vector<cplx> p(coeffs_.size() + 1, 0.0);
  std::copy(coeffs_.begin(), coeffs_.end(), p.begin() + 1);
  d1_ = differentiate(p);
  d2_ = differentiate(d1_);
  d3_ = differentiate(d2_);
  is_disk_ = coeffs_.size() == 1;
  build_boundary_cache();
  if (!is_disk_) {
    check_injectivity();
    build_cell_grid();
  }
}

void AnalyticDomain::validate_coefficients() {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) throw ConfigError("domain needs at least one coefficient");
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError("domain coefficients must be finite");
    }
  }
  if (std::abs(coeffs_.front()) == 0.0) throw ConfigError("leading coefficient c1 must be nonzero");
}

AnalyticDomain AnalyticDomain::unit_disk() { return AnalyticDomain({1.0}); }

AnalyticDomain AnalyticDomain::scaled_disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("disk radius must be positive");
  return AnalyticDomain({radius});
}

AnalyticDomain AnalyticDomain::cardioid(double c) {
  if (!(std::abs(c) <= 0.3)) throw ConfigError("cardioid parameter must satisfy |c| <= 0.3");
  return AnalyticDomain({1.0, c});
}

AnalyticDomain AnalyticDomain::asymmetric() {
  return AnalyticDomain({1.0, 0.15, cplx(0.05, 0.05)});
}

std::vector<std::string> AnalyticDomain::builtin_names() {
  return {"disk", "scaled:R", "cardioid:c", "asym"};
}

AnalyticDomain AnalyticDomain::parse(std::string_view spec) {
  const std::string_view s = trim(spec);
  if (s == "disk" || s == "unit") return unit_disk();
  if (s == "asym") return asymmetric();
  if (s.starts_with("scaled:")) return scaled_disk(parse_real(s.substr(7), spec));
  if (s.starts_with("cardioid:")) return cardioid(parse_real(s.substr(9), spec));
  std::vector<cplx> coeffs;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string_view item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    coeffs.push_back(parse_complex(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return AnalyticDomain(std::move(coeffs));
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("domain rejected: ") + e.what());
  }
}

std::string AnalyticDomain::describe() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    out += format_complex(coeffs_[k]);
  }
  return out;
}

cplx AnalyticDomain::map(cplx w) const { return w * horner(coeffs_, w); }

MapDerivatives AnalyticDomain::derivatives(cplx w) const {
  return {map(w), horner(d1_, w), horner(d2_, w), horner(d3_, w)};
}

PlanePoint AnalyticDomain::boundary_point(double t) const { return map(std::polar(1.0, t)); }

PlanePoint AnalyticDomain::inward_normal(double t) const {
  const cplx w = std::polar(1.0, t);
  const cplx g1 = cplx(0.0, 1.0) * w * horner(d1_, w);
  return cplx(0.0, 1.0) * g1 / std::abs(g1);
}

double AnalyticDomain::speed(double t) const { return std::abs(horner(d1_, std::polar(1.0, t))); }

double AnalyticDomain::curvature(double t) const {
  const cplx w = std::polar(1.0, t);
  const cplx f1 = horner(d1_, w);
  const cplx f2 = horner(d2_, w);
  const cplx g1 = cplx(0.0, 1.0) * w * f1;
  const cplx g2 = -w * f1 - w * w * f2;
  const double s = std::abs(g1);
  return (std::conj(g1) * g2).imag() / (s * s * s);
}

BoundaryModulus AnalyticDomain::boundary_m(double t) const {
  const cplx w = std::polar(1.0, t);
  const cplx f1 = horner(d1_, w);
  const cplx f2 = horner(d2_, w);
  const cplx f3 = horner(d3_, w);
  const cplx a = cplx(0.0, 1.0) * w * f2;
  const cplx b = -w * f2 - w * w * f3;
  const double q = std::norm(f1);
  const double q1 = 2.0 * (std::conj(f1) * a).real();
  const double q2 = 2.0 * std::norm(a) + 2.0 * (std::conj(f1) * b).real();
  const double m = 1.0 / std::sqrt(q);
  const double m3 = m * m * m;
  const double m5 = m3 * m * m;
  return {m, -0.5 * m3 * q1, 0.75 * m5 * q1 * q1 - 0.5 * m3 * q2};
}

double AnalyticDomain::poisson_hd(double t) const { return boundary_m(t).m / kTwoPi; }

void AnalyticDomain::build_boundary_cache() {
  const int n = opts_.boundary_samples;
  poly_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) poly_[static_cast<std::size_t>(k)] = boundary_point(kTwoPi * k / n);

  xmin_ = ymin_ = std::numeric_limits<double>::infinity();
  xmax_ = ymax_ = -std::numeric_limits<double>::infinity();
  for (const PlanePoint& p : poly_) {
    xmin_ = std::min(xmin_, p.re);
    xmax_ = std::max(xmax_, p.re);
    ymin_ = std::min(ymin_, p.im);
    ymax_ = std::max(ymax_, p.im);
  }

  if (is_disk_) {
    const double r = std::abs(coeffs_.front());
    r_in_ = r_out_ = r;
    r_in2_ = r_out2_ = r * r;
    xmin_ = ymin_ = -r;
    xmax_ = ymax_ = r;
    diameter_ = 2.0 * r;
    reach_ = r / 4.0;
    return;
  }

  // Dense pass for radii and curvature; the margins cover chord error.
  const int dense = 8 * n;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  double kmax = 0.0;
  for (int k = 0; k < dense; ++k) {
    const double t = kTwoPi * k / dense;
    const double r = boundary_point(t).abs();
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    kmax = std::max(kmax, std::abs(curvature(t)));
  }
  const double step = kTwoPi / dense;
  double smax = 0.0;
  for (int k = 0; k < dense; k += 8) smax = std::max(smax, speed(kTwoPi * k / dense));
  const double margin = kmax * (smax * step) * (smax * step) + 1e-12 * rmax;
  r_in_ = std::max(rmin - margin, 0.0);
  r_out_ = rmax + margin;
  r_in2_ = r_in_ * r_in_;
  r_out2_ = r_out_ * r_out_;
  if (!(r_in_ > 0.0)) throw GeometryError("origin is not an interior point of the domain");

  const std::size_t stride = std::max<std::size_t>(1, poly_.size() / 512);
  diameter_ = 0.0;
  for (std::size_t i = 0; i < poly_.size(); i += stride) {
    for (std::size_t j = i + stride; j < poly_.size(); j += stride) {
      diameter_ = std::max(diameter_, (poly_[i] - poly_[j]).abs());
    }
  }
  reach_ = 1.0 / kmax / 4.0;
}

void AnalyticDomain::check_injectivity() const {
  // F' has no zeros in the closed disk: nonvanishing on the circle and zero
  // winding number around the origin.
  const int dense = 4 * opts_.boundary_samples;
  double min_speed = std::numeric_limits<double>::infinity();
  double winding = 0.0;
  cplx prev = horner(d1_, 1.0);
  for (int k = 1; k <= dense; ++k) {
    const cplx cur = horner(d1_, std::polar(1.0, kTwoPi * k / dense));
    min_speed = std::min(min_speed, std::abs(cur));
    winding += std::arg(cur / prev);
    prev = cur;
  }
  if (!(min_speed > 1e-10)) throw GeometryError("F' vanishes on the unit circle");
  if (std::abs(winding) > std::numbers::pi) throw GeometryError("F' has a zero inside the unit disk");

  // Boundary is a simple curve: pairwise ratio on a coarse grid, then
  // segment intersection on the full polyline.
  const int m = 512;
  std::vector<cplx> pts(m), ws(m);
  for (int k = 0; k < m; ++k) {
    ws[k] = std::polar(1.0, kTwoPi * k / m);
    pts[k] = map(ws[k]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!(std::abs(pts[i] - pts[j]) / std::abs(ws[i] - ws[j]) > 1e-6)) {
        throw GeometryError("map is not injective on the unit circle");
      }
    }
  }
  const std::size_t n = poly_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint a = poly_[i], b = poly_[(i + 1) % n];
    const double axmin = std::min(a.re, b.re), axmax = std::max(a.re, b.re);
    const double aymin = std::min(a.im, b.im), aymax = std::max(a.im, b.im);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const PlanePoint c = poly_[j], d = poly_[(j + 1) % n];
      if (std::max(c.re, d.re) < axmin || std::min(c.re, d.re) > axmax) continue;
      if (std::max(c.im, d.im) < aymin || std::min(c.im, d.im) > aymax) continue;
      if (segments_intersect(a, b, c, d)) throw GeometryError("boundary curve self-intersects");
    }
  }
}

void AnalyticDomain::build_cell_grid() {
  const double w = xmax_ - xmin_, hgt = ymax_ - ymin_;
  cell_ = std::max(w, hgt) / opts_.grid_cells;
  inv_cell_ = 1.0 / cell_;
  gx0_ = xmin_ - 2.0 * cell_;
  gy0_ = ymin_ - 2.0 * cell_;
  nx_ = static_cast<std::int64_t>(std::ceil(w / cell_)) + 4;
  ny_ = static_cast<std::int64_t>(std::ceil(hgt / cell_)) + 4;
  cells_.assign(static_cast<std::size_t>(nx_ * ny_), kOutside);
  seeds_.assign(static_cast<std::size_t>(nx_ * ny_), -1);

  // Scanline fill at cell-center rows.
  const std::size_t n = poly_.size();
  std::vector<double> xs;
  for (std::int64_t iy = 0; iy < ny_; ++iy) {
    const double y = gy0_ + (static_cast<double>(iy) + 0.5) * cell_;
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const PlanePoint a = poly_[i], b = poly_[(i + 1) % n];
      if ((a.im <= y) != (b.im <= y)) xs.push_back(a.re + (y - a.im) * (b.re - a.re) / (b.im - a.im));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const auto i0 = static_cast<std::int64_t>(std::ceil((xs[k] - gx0_) / cell_ - 0.5));
      const auto i1 = static_cast<std::int64_t>(std::floor((xs[k + 1] - gx0_) / cell_ - 0.5));
      for (std::int64_t ix = std::max<std::int64_t>(i0, 0); ix <= std::min(i1, nx_ - 1); ++ix) {
        cells_[static_cast<std::size_t>(iy * nx_ + ix)] = kInside;
      }
    }
  }

  // Any cell within one cell of the polyline is undecided.
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint a = poly_[i], b = poly_[(i + 1) % n];
    const auto lo_x = static_cast<std::int64_t>(std::floor((std::min(a.re, b.re) - gx0_) * inv_cell_)) - 1;
    const auto hi_x = static_cast<std::int64_t>(std::floor((std::max(a.re, b.re) - gx0_) * inv_cell_)) + 1;
    const auto lo_y = static_cast<std::int64_t>(std::floor((std::min(a.im, b.im) - gy0_) * inv_cell_)) - 1;
    const auto hi_y = static_cast<std::int64_t>(std::floor((std::max(a.im, b.im) - gy0_) * inv_cell_)) + 1;
    for (std::int64_t iy = std::max<std::int64_t>(lo_y, 0); iy <= std::min(hi_y, ny_ - 1); ++iy) {
      for (std::int64_t ix = std::max<std::int64_t>(lo_x, 0); ix <= std::min(hi_x, nx_ - 1); ++ix) {
        cells_[static_cast<std::size_t>(iy * nx_ + ix)] = kMixed;
      }
    }
  }

  // Nearest-vertex seeds for every cell in a band around the boundary wide
  // enough for exit points and projection queries.
  const double band = reach_ + 3.0 * cell_;
  const auto reach_cells = static_cast<std::int64_t>(std::ceil(band * inv_cell_));
  std::vector<double> best(cells_.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint v = poly_[i];
    const auto cx = static_cast<std::int64_t>(std::floor((v.re - gx0_) * inv_cell_));
    const auto cy = static_cast<std::int64_t>(std::floor((v.im - gy0_) * inv_cell_));
    for (std::int64_t iy = std::max<std::int64_t>(cy - reach_cells, 0);
         iy <= std::min(cy + reach_cells, ny_ - 1); ++iy) {
      const double yc = gy0_ + (static_cast<double>(iy) + 0.5) * cell_;
      for (std::int64_t ix = std::max<std::int64_t>(cx - reach_cells, 0);
           ix <= std::min(cx + reach_cells, nx_ - 1); ++ix) {
        const double xc = gx0_ + (static_cast<double>(ix) + 0.5) * cell_;
        const double d2 = (xc - v.re) * (xc - v.re) + (yc - v.im) * (yc - v.im);
        const auto idx = static_cast<std::size_t>(iy * nx_ + ix);
        if (d2 < best[idx]) {
          best[idx] = d2;
          seeds_[idx] = static_cast<std::int32_t>(i);
        }
      }
    }
  }
}

double AnalyticDomain::nearest_vertex_angle(PlanePoint z) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    const double d = (poly_[i] - z).norm2();
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  return kTwoPi * static_cast<double>(arg) / static_cast<double>(poly_.size());
}

double AnalyticDomain::seed_angle(PlanePoint z) const {
  std::int64_t idx;
  if (!is_disk_ && grid_index(z, idx)) {
    const std::int32_t s = seeds_[static_cast<std::size_t>(idx)];
    if (s >= 0) return kTwoPi * s / static_cast<double>(poly_.size());
  }
  return nearest_vertex_angle(z);
}

// Continuation along the segment from the seed boundary point to z, with a
// Newton solve of F(w) = z_s at each stage.
bool AnalyticDomain::local_inverse(PlanePoint z, double t_seed, cplx& w) const {
  const cplx target = z.complex();
  w = std::polar(1.0, t_seed);
  const cplx start = map(w);
  const double dist = std::abs(target - start);
  const int stages = std::max(1, static_cast<int>(std::ceil(dist / (0.05 * diameter_))));
  const double tol = 1e-14 * diameter_;
  for (int s = 1; s <= stages; ++s) {
    const cplx zs = s == stages ? target : start + (target - start) * (static_cast<double>(s) / stages);
    bool done = false;
    for (int it = 0; it < 60; ++it) {
      const cplx r = map(w) - zs;
      if (std::abs(r) <= tol) {
        done = true;
        break;
      }
      cplx dw = r / horner(d1_, w);
      const double step = std::abs(dw);
      if (!std::isfinite(step)) return false;
      if (step > 0.25) dw *= 0.25 / step;
      w -= dw;
      if (step < 1e-16 * std::max(1.0, std::abs(w))) {
        done = std::abs(map(w) - zs) <= 1e3 * tol;
        break;
      }
    }
    if (!done) return false;
  }
  return true;
}

bool AnalyticDomain::inside_newton(PlanePoint z) const {
  if (is_disk_) return z.norm2() < r_out2_;
  cplx w;
  if (!local_inverse(z, seed_angle(z), w)) {
    throw GeometryError("Newton inversion did not converge in the inside test");
  }
  return std::norm(w) < 1.0;
}

bool AnalyticDomain::inside_winding(PlanePoint z) const {
  if (is_disk_) return z.norm2() < r_out2_;
  bool in = false;
  const std::size_t n = poly_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint a = poly_[i], b = poly_[(i + 1) % n];
    if ((a.im <= z.im) != (b.im <= z.im)) {
      const double x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
      if (x > z.re) in = !in;
    }
  }
  return in;
}

AnalyticDomain::Layer AnalyticDomain::inside_layer(PlanePoint z) const {
  const double r2 = z.norm2();
  if (r2 < r_in2_) return Layer::inscribed;
  if (is_disk_) return Layer::exact_disk;
  if (r2 > r_out2_) return Layer::outer;
  std::int64_t idx;
  if (!grid_index(z, idx)) return Layer::outer;
  return cells_[static_cast<std::size_t>(idx)] == kMixed ? Layer::newton : Layer::grid;
}

int AnalyticDomain::project_impl(PlanePoint z, BoundaryProjection& out) const {
  if (is_disk_) {
    const double r = z.abs();
    if (!(r > 0.0)) return 1;
    const double radius = std::abs(coeffs_.front());
    if (std::abs(radius - r) >= reach_) return 1;
    out.point = (radius / r) * z;
    out.l = radius - r;
    out.normal = (-1.0 / r) * z;
    out.t = wrap_angle(std::atan2(z.im, z.re) - std::arg(coeffs_.front()));
    return 0;
  }

  const cplx zc = z.complex();
  double t = seed_angle(z);
  for (int it = 0; it < 80; ++it) {
    const cplx w = std::polar(1.0, t);
    const cplx f1 = horner(d1_, w);
    const cplx f2 = horner(d2_, w);
    const cplx g1 = cplx(0.0, 1.0) * w * f1;
    const cplx g2 = -w * f1 - w * w * f2;
    const cplx d = map(w) - zc;
    const double f = (std::conj(d) * g1).real();
    double fp = std::norm(g1) + (std::conj(d) * g2).real();
    if (!(fp > 0.0)) fp = std::norm(g1);
    const double dt = std::clamp(-f / fp, -0.2, 0.2);
    t += dt;
    if (std::abs(dt) < 1e-15) break;
  }
  t = wrap_angle(t);
  const cplx w = std::polar(1.0, t);
  const cplx g = map(w);
  const cplx g1 = cplx(0.0, 1.0) * w * horner(d1_, w);
  const double s = std::abs(g1);
  const double f = (std::conj(g - zc) * g1).real();
  if (!(std::abs(f) / s <= 1e-10 * diameter_)) return 2;
  const cplx n = cplx(0.0, 1.0) * g1 / s;
  out.point = g;
  out.normal = n;
  out.t = t;
  out.l = (std::conj(n) * (zc - g)).real();
  if (std::abs(out.l) >= reach_) return 1;
  return 0;
}

BoundaryProjection AnalyticDomain::project_to_boundary(PlanePoint z) const {
  BoundaryProjection out;
  switch (project_impl(z, out)) {
    case 0:
      return out;
    case 1:
      throw GeometryError("point beyond reach of the boundary");
    default:
      throw GeometryError("boundary projection did not converge");
  }
}

std::optional<BoundaryProjection> AnalyticDomain::try_project(PlanePoint z) const {
  BoundaryProjection out;
  if (project_impl(z, out) != 0) return std::nullopt;
  return out;
}

cplx AnalyticDomain::invert(PlanePoint z) const {
  if (is_disk_) return z.complex() / coeffs_.front();
  if (z.re == 0.0 && z.im == 0.0) return 0.0;
  cplx w;
  if (!local_inverse(z, seed_angle(z), w) || !(std::abs(map(w) - z.complex()) <= 1e-12 * diameter_)) {
    throw GeometryError("conformal inversion did not converge");
  }
  return w;
}

double AnalyticDomain::greens_gd(PlanePoint z) const {
  if (z.re == 0.0 && z.im == 0.0) throw GeometryError("Green's function has its pole at 0");
  return -std::log(std::abs(invert(z))) / kTwoPi;
}

AnalyticDomain AnalyticDomain::reparametrized(double delta) const {
  std::vector<cplx> c = coeffs_;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, static_cast<double>(k + 1) * delta);
  return AnalyticDomain(std::move(c), opts_);
}

AnalyticDomain AnalyticDomain::rotated(double delta) const {
  std::vector<cplx> c = coeffs_;
  for (cplx& x : c) x *= std::polar(1.0, delta);
  return AnalyticDomain(std::move(c), opts_);
}

}  // namespace dhm

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dhm/plane.hpp"

namespace dhm {

using cplx = std::complex<double>;

struct BoundaryProjection {
  PlanePoint point;   // nearest boundary point F(e^{it})
  double l = 0.0;     // signed distance, positive inside
  PlanePoint normal;  // inward unit normal at point
  double t = 0.0;     // boundary angle in [0, 2pi)
};

// m(t) = 1/|F'(e^{it})| and its first two t-derivatives.
struct BoundaryModulus {
  double m = 0.0;
  double dm = 0.0;
  double d2m = 0.0;
};

struct MapDerivatives {
  cplx f, d1, d2, d3;
};

// Image of the closed unit disk under F(w) = c1 w + c2 w^2 + ... + cm w^m.
// Injectivity is checked at construction; the object is immutable
// afterwards and safe to share between threads.
class AnalyticDomain {
 public:
  struct Options {
    int boundary_samples = 2048;  // polyline vertices
    int grid_cells = 512;         // inside-test cells along the longer bbox side
  };

  explicit AnalyticDomain(std::vector<cplx> coeffs);
  AnalyticDomain(std::vector<cplx> coeffs, Options opts);

  static AnalyticDomain unit_disk();
  static AnalyticDomain scaled_disk(double radius);
  static AnalyticDomain cardioid(double c);  // w + c w^2, |c| <= 0.3
  static AnalyticDomain asymmetric();        // w + 0.15 w^2 + (0.05+0.05i) w^3

  // "disk", "scaled:R", "cardioid:c", "asym", or a coefficient list such as
  // "1,0.2" or "1,0.15,0.05+0.05i".
  static AnalyticDomain parse(std::string_view spec);
  static std::vector<std::string> builtin_names();

  const std::vector<cplx>& coefficients() const { return coeffs_; }
  std::string describe() const;
  bool is_disk() const { return is_disk_; }

  cplx map(cplx w) const;
  MapDerivatives derivatives(cplx w) const;

  PlanePoint boundary_point(double t) const;
  PlanePoint inward_normal(double t) const;
  double speed(double t) const;  // |F'(e^{it})| = |dz/dt|
  double curvature(double t) const;
  BoundaryModulus boundary_m(double t) const;

  bool inside(PlanePoint z) const;
  bool inside_newton(PlanePoint z) const;
  bool inside_winding(PlanePoint z) const;

  // Which layer of the inside test decided; for diagnostics and tests.
  enum class Layer : std::uint8_t { inscribed, outer, grid, newton, exact_disk };
  Layer inside_layer(PlanePoint z) const;

  BoundaryProjection project_to_boundary(PlanePoint z) const;
  // Empty instead of throwing when z is beyond reach or Newton fails.
  std::optional<BoundaryProjection> try_project(PlanePoint z) const;
  cplx invert(PlanePoint z) const;

  double greens_gd(PlanePoint z) const;
  double poisson_hd(double t) const;

  double reach_estimate() const { return reach_; }
  double diameter() const { return diameter_; }
  double inscribed_radius() const { return r_in_; }
  double circumscribed_radius() const { return r_out_; }
  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }

  // Same domain with parametrization shifted by delta: F(e^{i delta} w).
  AnalyticDomain reparametrized(double delta) const;
  // Same parametrization rotated in the plane: e^{i delta} F(w).
  AnalyticDomain rotated(double delta) const;

 private:
  enum Cell : std::uint8_t { kOutside = 0, kInside = 1, kMixed = 2 };

  void validate_coefficients();
  void build_boundary_cache();
  void check_injectivity() const;
  void build_cell_grid();

  double seed_angle(PlanePoint z) const;
  double nearest_vertex_angle(PlanePoint z) const;
  bool local_inverse(PlanePoint z, double t_seed, cplx& w) const;
  bool grid_index(PlanePoint z, std::int64_t& idx) const;
  // 0 on success, 1 beyond reach, 2 no convergence.
  int project_impl(PlanePoint z, BoundaryProjection& out) const;

  std::vector<cplx> coeffs_;
  std::vector<cplx> d1_, d2_, d3_;  // coefficient lists of F', F'', F''' (ascending powers from w^0)
  Options opts_;
  bool is_disk_ = false;

  std::vector<PlanePoint> poly_;  // F(e^{2 pi i k / n})
  double r_in_ = 0.0, r_in2_ = 0.0;
  double r_out_ = 0.0, r_out2_ = 0.0;
  double xmin_ = 0.0, xmax_ = 0.0, ymin_ = 0.0, ymax_ = 0.0;
  double diameter_ = 0.0;
  double reach_ = 0.0;

  double gx0_ = 0.0, gy0_ = 0.0, cell_ = 1.0, inv_cell_ = 1.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::int32_t> seeds_;  // nearest polyline vertex per cell, -1 if far
};

inline bool AnalyticDomain::inside(PlanePoint z) const {
  const double r2 = z.norm2();
  if (r2 < r_in2_) return true;
  if (is_disk_) return r2 < r_out2_;
  if (r2 > r_out2_) return false;
  std::int64_t idx;
  if (!grid_index(z, idx)) return false;
  const std::uint8_t c = cells_[static_cast<std::size_t>(idx)];
  if (c != kMixed) return c == kInside;
  return inside_newton(z);
}

inline bool AnalyticDomain::grid_index(PlanePoint z, std::int64_t& idx) const {
  const double fx = (z.re - gx0_) * inv_cell_;
  const double fy = (z.im - gy0_) * inv_cell_;
  if (!(fx >= 0.0 && fy >= 0.0)) return false;
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  if (ix >= nx_ || iy >= ny_) return false;
  idx = iy * nx_ + ix;
  return true;
}

// Parses "re", "re+imi", "re-imi", "imi", "i", "-i".
cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

}  // namespace dhm

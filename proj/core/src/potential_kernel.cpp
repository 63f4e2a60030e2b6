#include "dhm/potential_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "dhm/errors.hpp"
#include "dhm/quadrature.hpp"
#include "dhm/stats.hpp"

namespace dhm {

namespace {

using NoPromote = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

constexpr double kPi = std::numbers::pi;

// sum_{k>=1} (-1)^{k+1} (r/2)^{2k} / (k! (k+1)!)
double one_minus_phi_series(double r) {
  const double s = 0.25 * r * r;
  double term = 0.5 * s;  // k = 1
  double sum = term;
  for (int k = 2; k < 30; ++k) {
    term *= -s / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// sum_{k>=1} (-1)^{k+1} (y/2)^{2k} / (k!)^2
double one_minus_j0_series(double y) {
  const double s = 0.25 * y * y;
  double term = s;
  double sum = term;
  for (int k = 2; k < 30; ++k) {
    term *= -s / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double one_minus_j0(double y) { return y < 1.0 ? one_minus_j0_series(y) : 1.0 - bessel_j0(y); }

double kernel_integrand(double r, double d) {
  const double phi = charfn(r);
  return one_minus_j0(r * d) * phi * phi * phi / one_minus_charfn(r) * r;
}

double radial_integral(double d, const KernelQuadrature& quad) {
  const QuadratureRule ref = gauss_legendre(quad.nodes_per_panel);
  const double width = 0.5 * std::min(kPi / d, kPi);
  auto panels = [&](double from, double to) {
    double s = 0.0;
    for (double a = from; a < to - 0.5 * width; a += width) {
      s += integrate_gl(ref, a, a + width, [d](double r) { return kernel_integrand(r, d); });
    }
    return s;
  };
  double r_end = std::ceil(quad.r_max / width) * width;
  double total = panels(0.0, r_end);
  for (int k = 0; k < quad.max_doublings; ++k) {
    const double next_end = 2.0 * r_end;
    const double extra = panels(r_end, next_end);
    total += extra;
    r_end = next_end;
    if (std::abs(extra) <= quad.tail_tol) return total / (2.0 * kPi);
  }
  std::ostringstream os;
  os << "potential kernel tail did not settle at |x| = " << d << " (last tail change above "
     << quad.tail_tol << " at R = " << r_end << ")";
  throw QuadratureError(os.str());
}

}  // namespace

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x, NoPromote()); }
double bessel_j1(double x) { return boost::math::cyl_bessel_j(1, x, NoPromote()); }

double charfn(double r) {
  if (r < 0.5) return 1.0 - one_minus_phi_series(r);
  return 2.0 * bessel_j1(r) / r;
}

double one_minus_charfn(double r) {
  if (r < 0.5) return one_minus_phi_series(r);
  return 1.0 - 2.0 * bessel_j1(r) / r;
}

double psi_remainder(double r) {
  if (r < 0.5) {
    // 1 - phi = s/2 + tail with s = r^2/4, so psi = -4 tail / (s^2 B) where
    // B = 1 + 2 tail / s.
    const double s = 0.25 * r * r;
    double t = 0.5 * s;
    double tail = 0.0;
    for (int k = 2; k < 30; ++k) {
      t *= -s / (static_cast<double>(k) * (k + 1));
      tail += t;
      if (std::abs(t) < 1e-18 * std::abs(tail)) break;
    }
    if (s == 0.0) return 1.0 / 3.0;
    const double b = 1.0 + 2.0 * tail / s;
    return -4.0 * tail / (s * s * b);
  }
  return 1.0 / one_minus_charfn(r) - 8.0 / (r * r);
}

double p1_radial(double d) { return d < 1.0 ? 1.0 / kPi : 0.0; }

double p2_radial(double d) {
  if (d >= 2.0) return 0.0;
  const double half = 0.5 * d;
  return (2.0 * std::acos(half) - half * std::sqrt(4.0 - d * d)) / (kPi * kPi);
}

double p1(PlanePoint x) { return p1_radial(x.abs()); }
double p2(PlanePoint x) { return p2_radial(x.abs()); }

double potential_a_radial(double d, const KernelQuadrature& quad) {
  if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("potential kernel needs |x| > 0");
  if (quad.nodes_per_panel < 4 || !(quad.r_max > 0.0)) throw ConfigError("bad kernel quadrature settings");
  return (p1_radial(0.0) - p1_radial(d)) + (p2_radial(0.0) - p2_radial(d)) + radial_integral(d, quad);
}

double potential_a(PlanePoint x, const KernelQuadrature& quad) { return potential_a_radial(x.abs(), quad); }

namespace {

PotentialProfile profile_fit(std::span<const double> radii, const KernelQuadrature& quad, bool with_decay) {
  if (radii.size() < 6) throw ConfigError("C0 fit needs at least 6 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ConfigError("C0 fit radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ConfigError("C0 fit radii must be increasing");
  }
  if (radii.back() < 4.0 * radii.front()) throw ConfigError("C0 fit radii must span a factor of 4");

  PotentialProfile p;
  p.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const double a = potential_a_radial(r, quad);
    p.a_values.push_back(a);
    p.residuals.push_back(a - 4.0 / kPi * std::log(r));
  }
  const std::size_t cols = with_decay ? 2 : 1;
  std::vector<double> design;
  for (double r : radii) {
    design.push_back(1.0);
    if (with_decay) design.push_back(1.0 / (r * r));
  }
  const LinearFit fit = weighted_least_squares(design, cols, p.residuals, {});
  p.c0_hat = fit.coef[0];
  p.c0_ci = fit.std_err[0];
  if (with_decay) {
    p.decay_coef = fit.coef[1];
    p.decay_ci = fit.std_err[1];
  }
  p.fit_residuals = fit.residuals;
  for (double r : fit.residuals) p.max_fit_residual = std::max(p.max_fit_residual, std::abs(r));
  return p;
}

}  // namespace

PotentialProfile fit_c0(std::span<const double> radii, const KernelQuadrature& quad) {
  return profile_fit(radii, quad, true);
}

PotentialProfile fit_c0_constant(std::span<const double> radii, const KernelQuadrature& quad) {
  return profile_fit(radii, quad, false);
}

double check_delta_identity(PlanePoint x, const KernelQuadrature& quad) {
  const double d = x.abs();
  if (!(std::abs(d - 1.0) > 0.05)) throw ConfigError("delta identity check needs ||x| - 1| > 0.05");

  // Average of the radial function a over B(x, 1): the circle |y| = s meets
  // the disk in an arc of length 2 s beta(s).
  auto arc = [d](double s) {
    if (d + s <= 1.0) return 2.0 * kPi * s;
    const double c = std::clamp((s * s + d * d - 1.0) / (2.0 * s * d), -1.0, 1.0);
    return 2.0 * s * std::acos(c);
  };
  auto a_of = [&](double s) { return s > 0.0 ? potential_a_radial(s, quad) : 0.0; };

  const double s_lo = std::max(0.0, d - 1.0), s_hi = d + 1.0;
  std::vector<double> cuts = {s_lo, s_hi};
  for (double c : {std::abs(1.0 - d), 1.0, 2.0}) {
    if (c > s_lo && c < s_hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Cosine map clusters nodes at both ends of each piece, which absorbs the
  // square-root behaviour of the arc length and of p2 near |y| = 2.
  const QuadratureRule rule = gauss_legendre(64, 0.0, 1.0);
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = rule.nodes[i];
      const double s = lo + (hi - lo) * 0.5 * (1.0 - std::cos(kPi * v));
      const double ds = (hi - lo) * 0.5 * kPi * std::sin(kPi * v);
      integral += rule.weights[i] * a_of(s) * arc(s) * ds;
    }
  }
  const double laplacian = integral / kPi - potential_a_radial(d, quad);
  return laplacian - (d < 1.0 ? 1.0 / kPi : 0.0);
}

}  // namespace dhm

#include "dhm/harmonic_extension.hpp"

#include <cmath>
#include <numbers>

#include "dhm/errors.hpp"

namespace dhm {

HarmonicExtension::HarmonicExtension(const BoundaryFunction& g, const AnalyticDomain& dom, int modes,
                                     int samples) {
  if (modes < 1 || samples < 2 * modes + 2) throw ConfigError("harmonic extension needs samples > 2 modes");
  std::vector<double> vals(static_cast<std::size_t>(samples));
  std::vector<cplx> roots(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / samples;
    roots[j] = std::polar(1.0, -phi);
    vals[j] = g(dom.boundary_point(phi));
  }
  double sum = 0.0;
  for (double v : vals) sum += v;
  g0_ = sum / samples;

  std::vector<cplx> coef(static_cast<std::size_t>(modes) + 1);
  double scale = std::abs(g0_);
  for (int k = 1; k <= modes; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < samples; ++j) acc += vals[j] * roots[(static_cast<long>(k) * j) % samples];
    coef[k] = acc / static_cast<double>(samples);
    scale = std::max(scale, std::abs(coef[k]));
  }
  int keep = modes;
  while (keep > 0 && std::abs(coef[keep]) <= 1e-15 * scale) --keep;
  gk_.assign(coef.begin() + 1, coef.begin() + 1 + keep);
  tail_ = keep < modes ? 0.0 : std::abs(coef[modes]);
}

double HarmonicExtension::operator()(cplx w) const {
  cplx acc = 0.0;
  for (auto it = gk_.rbegin(); it != gk_.rend(); ++it) acc = (acc + *it) * w;
  return g0_ + 2.0 * acc.real();
}

}  // namespace dhm

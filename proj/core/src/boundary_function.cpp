#include "dhm/boundary_function.hpp"

#include <cmath>

#include "dhm/conformal_domain.hpp"
#include "dhm/errors.hpp"

namespace dhm {

BoundaryFunction BoundaryFunction::parse(std::string_view spec) {
  const std::string s(spec);
  if (s == "one") return {s, [](PlanePoint) { return 1.0; }};
  if (s == "re") return {s, [](PlanePoint z) { return z.re; }};
  if (s == "im") return {s, [](PlanePoint z) { return z.im; }};
  if (s == "re2") return {s, [](PlanePoint z) { return z.re * z.re; }};
  if (s == "upper_half") return {s, [](PlanePoint z) { return z.im > 0.0 ? 1.0 : 0.0; }, false};
  if (s.starts_with("gauss_bump(") && s.ends_with(")")) {
    const std::string_view args = std::string_view(s).substr(11, s.size() - 12);
    const std::size_t comma = args.rfind(',');
    if (comma == std::string_view::npos) throw ConfigError("gauss_bump needs (center,width)");
    const cplx c = parse_complex(args.substr(0, comma));
    const double w = parse_complex(args.substr(comma + 1)).real();
    if (!(w > 0.0)) throw ConfigError("gauss_bump width must be positive");
    const double inv = 1.0 / (2.0 * w * w);
    return {s, [c, inv](PlanePoint z) { return std::exp(-std::norm(z.complex() - c) * inv); }};
  }
  throw ConfigError("unknown boundary function '" + s + "'");
}

}  // namespace dhm

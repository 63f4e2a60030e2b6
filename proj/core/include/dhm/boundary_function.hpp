#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "dhm/plane.hpp"

namespace dhm {

// Test function g on the boundary, evaluated at boundary points z.
//   one                    1
//   re, im                 Re z, Im z
//   re2                    (Re z)^2
//   upper_half             1 if Im z > 0, else 0
//   gauss_bump(c,w)        exp(-|z - c|^2 / (2 w^2)), c complex as "re+imi"
class BoundaryFunction {
 public:
  BoundaryFunction(std::string name, std::function<double(PlanePoint)> fn, bool smooth = true)
      : name_(std::move(name)), fn_(std::move(fn)), smooth_(smooth) {}

  static BoundaryFunction parse(std::string_view spec);

  double operator()(PlanePoint z) const { return fn_(z); }
  const std::string& name() const { return name_; }
  bool is_constant_one() const { return name_ == "one"; }
  // Smooth functions admit the harmonic control variate.
  bool smooth() const { return smooth_; }

 private:
  std::string name_;
  std::function<double(PlanePoint)> fn_;
  bool smooth_;
};

}  // namespace dhm

#pragma once

#include <vector>

namespace dhm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b]. Cached per n on [-1, 1].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Applies a cached n-point rule to f on [a, b].
template <class F>
double integrate_gl(const QuadratureRule& ref, double a, double b, F&& f) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) s += ref.weights[i] * f(c + r * ref.nodes[i]);
  return r * s;
}

}  // namespace dhm

#include "dhm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "dhm/errors.hpp"

namespace dhm {

namespace {

QuadratureRule legendre_reference(int n) {
  QuadratureRule q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[static_cast<std::size_t>(i)] = -x;
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    q.weights[static_cast<std::size_t>(i)] = w;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return q;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs at least one node");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  QuadratureRule ref;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, legendre_reference(n)).first;
    ref = it->second;
  }
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    ref.nodes[i] = c + r * ref.nodes[i];
    ref.weights[i] *= r;
  }
  return ref;
}

}  // namespace dhm

#pragma once

#include <vector>

#include "dhm/boundary_function.hpp"
#include "dhm/conformal_domain.hpp"

namespace dhm {

// Harmonic extension of a truncated Fourier series of g(F(e^{i phi})):
// u(w) = g_0 + 2 Re sum_{k=1}^{N} g_k w^k. Exactly harmonic in w, so
// u(psi(z)) is harmonic on a neighbourhood of the closed domain.
class HarmonicExtension {
 public:
  HarmonicExtension(const BoundaryFunction& g, const AnalyticDomain& dom, int modes = 64,
                    int samples = 1024);

  double operator()(cplx w) const;
  double at_origin() const { return g0_; }
  int modes() const { return static_cast<int>(gk_.size()); }
  // Largest discarded coefficient magnitude; a proxy for truncation error.
  double tail() const { return tail_; }

 private:
  double g0_ = 0.0;
  std::vector<cplx> gk_;  // g_1 .. g_N
  double tail_ = 0.0;
};

}  // namespace dhm

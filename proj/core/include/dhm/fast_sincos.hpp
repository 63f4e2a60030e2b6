#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace dhm {

// cos/sin of the angle 2*pi*(k + 1/2)/2^32 for a 32-bit k. A 4096-entry
// table at cell midpoints plus a short Taylor correction; absolute error
// stays near 1e-16 over the full circle.
class TurnSinCos {
 public:
  static constexpr int kBits = 12;
  static constexpr int kSize = 1 << kBits;

  TurnSinCos() {
    for (int k = 0; k < kSize; ++k) {
      const double a = 2.0 * std::numbers::pi * (k + 0.5) / kSize;
      table_[k] = {std::cos(a), std::sin(a)};
    }
  }

  struct Pair {
    double c;
    double s;
  };

  Pair operator()(std::uint32_t turn) const {
    constexpr int kFracBits = 32 - kBits;
    constexpr double kScale = 2.0 * std::numbers::pi / kSize / (1u << kFracBits);
    const Pair& base = table_[turn >> kFracBits];
    const std::uint32_t frac = turn & ((1u << kFracBits) - 1u);
    const double d = (static_cast<double>(frac) + 0.5 - 0.5 * (1u << kFracBits)) * kScale;
    const double d2 = d * d;
    const double cd = 1.0 - d2 * (0.5 - d2 * (1.0 / 24.0));
    const double sd = d * (1.0 - d2 * (1.0 / 6.0 - d2 * (1.0 / 120.0)));
    return {base.c * cd - base.s * sd, base.s * cd + base.c * sd};
  }

 private:
  std::array<Pair, kSize> table_{};
};

inline const TurnSinCos kTurnSinCos{};

}  // namespace dhm

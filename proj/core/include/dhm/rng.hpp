#pragma once

#include <bit>
#include <cstdint>

namespace dhm {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Odd increment with enough bit transitions, as in Java's SplittableRandom.
constexpr std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  const int transitions = std::popcount(z ^ (z >> 1));
  return transitions < 24 ? z ^ 0xaaaaaaaaaaaaaaaaULL : z;
}

// SplitMix64 with a per-stream gamma. Two trajectories with colliding
// states still produce different sequences because their gammas differ.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t state, std::uint64_t gamma = kGoldenGamma)
      : state_(state), gamma_(gamma | 1ULL) {}

  constexpr std::uint64_t next() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t state() const { return state_; }
  constexpr std::uint64_t gamma() const { return gamma_; }

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
};

// Key for one experiment stream (for example one quadrature node or one h).
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ (stream * kGoldenGamma + 0xbb67ae8584caa73bULL));
}

// Generator for trajectory `index` of a stream. Depends only on the triple,
// never on which worker runs it.
constexpr SplitMix64 trajectory_rng(std::uint64_t key, std::uint64_t index) {
  const std::uint64_t state = mix64(key + (index + 1) * kGoldenGamma);
  const std::uint64_t gamma = mix_gamma(key ^ mix64(index ^ 0x3c6ef372fe94f82bULL));
  return SplitMix64(state, gamma);
}

constexpr SplitMix64 trajectory_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return trajectory_rng(stream_key(seed, stream), index);
}

}  // namespace dhm

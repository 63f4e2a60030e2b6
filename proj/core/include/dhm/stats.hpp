#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace dhm {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t censored = 0;
};

// One-pass mean/variance (Welford), mergeable with Chan's update.
class RunningMoments {
 public:
  void push(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningMoments& o);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  MCEstimate estimate(std::uint64_t censored = 0) const {
    return {mean_, std_error(), n_, censored};
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Combined standard error of a difference of independent estimates.
inline double combined_stderr(const MCEstimate& a, const MCEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

struct LinearFit {
  std::vector<double> coef;     // in design-column order
  std::vector<double> std_err;
  std::vector<double> residuals;
  double chi2 = 0.0;
  double condition = 0.0;  // of the (weighted) design matrix
};

// Least squares on a row-major design matrix with `cols` columns. With
// sigma given, rows are weighted by 1/sigma^2 and std_err comes from
// (X^T W X)^-1; with sigma empty the residual variance is used instead.
LinearFit weighted_least_squares(std::span<const double> design, std::size_t cols,
                                 std::span<const double> y, std::span<const double> sigma);

// Polynomial in x of the given degree, intercept first.
LinearFit weighted_polyfit(std::span<const double> x, std::span<const double> y,
                           std::span<const double> sigma, int degree);

}  // namespace dhm

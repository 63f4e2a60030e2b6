#include "dhm/stats.hpp"

#include <Eigen/Dense>

#include "dhm/errors.hpp"

namespace dhm {

void RunningMoments::merge(const RunningMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double d = o.mean_ - mean_;
  mean_ += d * nb / n;
  m2_ += o.m2_ + d * d * na * nb / n;
  n_ += o.n_;
}

LinearFit weighted_least_squares(std::span<const double> design, std::size_t cols,
                                 std::span<const double> y, std::span<const double> sigma) {
  const std::size_t rows = y.size();
  if (cols == 0 || design.size() != rows * cols) throw ConfigError("design matrix shape mismatch");
  if (!sigma.empty() && sigma.size() != rows) throw ConfigError("sigma length mismatch");
  if (rows < cols) throw ConfigError("fewer observations than fit parameters");

  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double w = 1.0;
    if (!sigma.empty()) {
      if (!(sigma[i] > 0.0)) throw ConfigError("weighted fit needs positive sigma");
      w = 1.0 / sigma[i];
    }
    for (std::size_t j = 0; j < cols; ++j) x(i, j) = w * design[i * cols + j];
    b(i) = w * y[i];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LinearFit fit;
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!std::isfinite(fit.condition) || fit.condition > 1e12) {
    throw ConfigError("least-squares design is singular or ill-conditioned");
  }
  const Eigen::VectorXd coef = svd.solve(b);
  const Eigen::VectorXd r = b - x * coef;
  fit.chi2 = r.squaredNorm();

  // (X^T X)^-1 = V S^-2 V^T
  const Eigen::MatrixXd v = svd.matrixV();
  Eigen::MatrixXd cov = v * sv.cwiseInverse().cwiseAbs2().asDiagonal() * v.transpose();
  if (sigma.empty()) {
    const double dof = static_cast<double>(rows - cols);
    cov *= dof > 0 ? fit.chi2 / dof : 0.0;
  }
  fit.coef.resize(cols);
  fit.std_err.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    fit.coef[j] = coef(j);
    fit.std_err[j] = std::sqrt(std::max(cov(j, j), 0.0));
  }
  fit.residuals.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < cols; ++j) pred += design[i * cols + j] * coef(j);
    fit.residuals[i] = y[i] - pred;
  }
  return fit;
}

LinearFit weighted_polyfit(std::span<const double> x, std::span<const double> y,
                           std::span<const double> sigma, int degree) {
  if (degree < 0) throw ConfigError("negative polynomial degree");
  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  std::vector<double> design(x.size() * cols);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      design[i * cols + j] = p;
      p *= x[i];
    }
  }
  return weighted_least_squares(design, cols, y, sigma);
}

}  // namespace dhm

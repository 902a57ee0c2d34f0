#include "hdnt/covariance.hpp"

#include <cmath>
#include <cstdint>

#include "hdnt/config.hpp"
#include "hdnt/errors.hpp"

namespace hdnt {

std::string to_string(const Estimator& est) {
  if (est.kind == Estimator::Kind::sample) return "sample";
  return "adaptive_threshold(" + format_double(est.delta) + ")";
}

std::pair<Eigen::VectorXd, SymMatrix> sample_moments(const SampleMatrix& x) {
  const int n = x.n();
  if (n == 0) throw EmptySample("sample_moments: empty sample");
  const int d = x.dim();
  const Eigen::VectorXd mean = x.data().colwise().mean().transpose();
  RowMajorMatrix centered = x.data();
  centered.rowwise() -= mean.transpose();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / n);
  cov.triangularView<Eigen::StrictlyUpper>() =
      cov.triangularView<Eigen::StrictlyLower>().transpose();
  return {mean, SymMatrix(cov)};
}

CovarianceEstimate adaptive_threshold_cov(const SampleMatrix& x, double delta) {
  const int n = x.n();
  if (n < 2) throw InsufficientSample("adaptive_threshold_cov: need n >= 2");
  if (delta < 0.0) throw InvalidConfig("adaptive_threshold_cov: delta must be >= 0");
  const int d = x.dim();

  auto [mean, s] = sample_moments(x);
  RowMajorMatrix centered = x.data();
  centered.rowwise() -= mean.transpose();

  // theta_ij = (1/n) sum_k (c_ki c_kj - S_ij)^2
  //          = (1/n) sum_k (c_ki c_kj)^2 - S_ij^2,
  // computed via the squared data matrix; round-off can leave tiny
  // negatives, clamped before the square root.
  const RowMajorMatrix squared = centered.cwiseProduct(centered);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d, d);
  cross.selfadjointView<Eigen::Lower>().rankUpdate(squared.transpose(), 1.0 / n);
  cross.triangularView<Eigen::StrictlyUpper>() =
      cross.triangularView<Eigen::StrictlyLower>().transpose();
  const Eigen::MatrixXd theta =
      (cross - s.mat().cwiseProduct(s.mat())).cwiseMax(0.0);

  // Keep-or-zero is decided once per unordered pair so the output stays
  // exactly symmetric.
  const double rate = std::log(static_cast<double>(d)) / n;
  Eigen::MatrixXd out = s.mat();
  std::int64_t zeroed = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double lambda = delta * std::sqrt(theta(i, j) * rate);
      if (std::abs(out(i, j)) < lambda) {
        out(i, j) = 0.0;
        out(j, i) = 0.0;
        zeroed += 2;
      }
    }
  }
  const std::int64_t off_diag = static_cast<std::int64_t>(d) * (d - 1);
  const double frac = off_diag > 0 ? static_cast<double>(zeroed) / off_diag : 0.0;
  return CovarianceEstimate{SymMatrix(out), frac, delta};
}

GaussianModel fit_gaussian_model(const SampleMatrix& x, const Estimator& est) {
  if (x.n() == 0) throw EmptySample("fit_gaussian_model: empty sample");
  if (x.n() < 2) throw InsufficientSample("fit_gaussian_model: need n >= 2");

  auto [mean, s] = sample_moments(x);
  SymMatrix estimate = est.kind == Estimator::Kind::sample
                           ? s
                           : adaptive_threshold_cov(x, est.delta).matrix;

  // One decomposition drives both the repair decision and the square root:
  // the shift (A + dI)/(1 + d) preserves eigenvectors and maps eigenvalues
  // to (l + d)/(1 + d).
  const SymEigen eig = sym_eigen(estimate);
  const double lmin = eig.values(0);
  if (lmin > 0.0) {
    return GaussianModel{std::move(mean), estimate,
                         detail::sqrt_from_eigen(eig, eig.values), false, est,
                         lmin};
  }
  const double delta = std::abs(lmin) + 0.05;
  const int d = estimate.dim();
  SymMatrix cov((estimate.mat() + delta * Eigen::MatrixXd::Identity(d, d)) /
                (1.0 + delta));
  const Eigen::VectorXd shifted =
      (eig.values.array() + delta) / (1.0 + delta);
  return GaussianModel{std::move(mean), std::move(cov),
                       detail::sqrt_from_eigen(eig, shifted), true, est,
                       shifted(0)};
}

FitDiagnostics fit_diagnostics(const SampleMatrix& x, const GaussianModel& model) {
  auto [mean, s] = sample_moments(x);
  const SymMatrix diff(model.cov.mat() - s.mat());
  return FitDiagnostics{model.lambda_min, diff.spectral_norm()};
}

}  // namespace hdnt

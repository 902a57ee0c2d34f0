#ifndef HDNT_COVARIANCE_HPP
#define HDNT_COVARIANCE_HPP

#include <string>
#include <utility>

#include "hdnt/linalg.hpp"

namespace hdnt {

/// Covariance estimator selection. `adaptive_threshold` is the sparse
/// entry-wise thresholding estimator; `sample` keeps the raw sample
/// covariance.
struct Estimator {
  enum class Kind { sample, adaptive_threshold };

  Kind kind = Kind::adaptive_threshold;
  double delta = 2.0;  // threshold constant, used by adaptive_threshold only

  static Estimator sample() { return {Kind::sample, 0.0}; }
  static Estimator adaptive(double delta = 2.0) {
    return {Kind::adaptive_threshold, delta};
  }

  bool operator==(const Estimator&) const = default;
};

std::string to_string(const Estimator& est);

/// Output of the thresholding estimator. The diagonal always equals the
/// raw sample covariance diagonal; every off-diagonal entry is either zero
/// or the untouched sample covariance entry.
struct CovarianceEstimate {
  SymMatrix matrix;
  double zeroed_fraction;  // fraction of off-diagonal entries set to zero
  double delta;
};

/// A fitted Gaussian: sample mean, a positive-definite covariance and its
/// cached symmetric square root.
struct GaussianModel {
  Eigen::VectorXd mean;
  SymMatrix cov;
  SymMatrix sqrt_cov;
  bool repaired;          // true when the estimate needed a PSD shift
  Estimator estimator;
  double lambda_min;      // smallest eigenvalue of cov (post-repair)
};

/// Sample mean and covariance with divisor n.
///
/// cov_{ij} = (1/n) sum_k (X_{ki} - mean_i)(X_{kj} - mean_j); exact
/// symmetry is guaranteed by construction. Throws EmptySample when n == 0.
std::pair<Eigen::VectorXd, SymMatrix> sample_moments(const SampleMatrix& x);

/// Entry-adaptive hard thresholding of the sample covariance.
///
/// Off-diagonal entries are kept only when |S_ij| >= lambda_ij with
/// lambda_ij = delta * sqrt(theta_ij * log(d) / n) and theta_ij the sample
/// variance of the centered cross products. The diagonal is untouched.
/// Throws InsufficientSample when n < 2.
CovarianceEstimate adaptive_threshold_cov(const SampleMatrix& x, double delta);

/// Fits mean and covariance with the chosen estimator, repairs the
/// covariance to positive definiteness when needed, and caches its
/// symmetric square root. One eigendecomposition serves both the repair
/// decision and the square root.
GaussianModel fit_gaussian_model(const SampleMatrix& x, const Estimator& est);

/// Estimation diagnostics reported by the CLI: smallest covariance
/// eigenvalue (positivity check) and the spectral distance between the
/// fitted covariance and the raw sample covariance.
struct FitDiagnostics {
  double lambda_min;
  double spectral_dist_to_sample;
};

FitDiagnostics fit_diagnostics(const SampleMatrix& x, const GaussianModel& model);

}  // namespace hdnt

#endif  // HDNT_COVARIANCE_HPP

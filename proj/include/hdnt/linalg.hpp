#ifndef HDNT_LINALG_HPP
#define HDNT_LINALG_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hdnt/rng.hpp"

namespace hdnt {

/// Dense row-major matrix of observations: one row per observation.
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// An n x d batch of observations, rows are observations. n may be zero;
/// d is at least one.
class SampleMatrix {
 public:
  SampleMatrix(int n, int d);
  explicit SampleMatrix(RowMajorMatrix rows);

  int n() const { return static_cast<int>(rows_.rows()); }
  int dim() const { return static_cast<int>(rows_.cols()); }

  const RowMajorMatrix& data() const { return rows_; }
  RowMajorMatrix& data() { return rows_; }

  double operator()(int i, int j) const { return rows_(i, j); }
  double& operator()(int i, int j) { return rows_(i, j); }

  bool all_finite() const { return rows_.allFinite(); }

  /// New matrix restricted to the given columns, in the given order.
  SampleMatrix select_columns(const std::vector<int>& cols) const;

 private:
  RowMajorMatrix rows_;
};

/// A d x d real symmetric matrix. Symmetry is enforced on construction by
/// averaging the input with its transpose, so entries(i,j) == entries(j,i)
/// holds exactly.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& a);

  static SymMatrix identity(int d);
  static SymMatrix from_diagonal(const Eigen::VectorXd& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  bool all_finite() const { return m_.allFinite(); }
  double frobenius_norm() const { return m_.norm(); }

  /// Largest absolute eigenvalue, computed from a fresh decomposition.
  double spectral_norm() const;

  SymMatrix scaled(double factor) const { return SymMatrix(m_ * factor); }

 private:
  Eigen::MatrixXd m_;
};

/// Eigendecomposition A = U diag(values) U^T with eigenvalues ascending
/// and orthonormal eigenvector columns.
struct SymEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full symmetric eigendecomposition.
///
/// Throws InvalidMatrix on non-finite entries and NumericalFailure if the
/// iteration does not converge.
SymEigen sym_eigen(const SymMatrix& a);

/// Symmetric PSD square root R with R*R ~= A, built as U sqrt(L) U^T from
/// the eigendecomposition. Eigenvalues in [-1e-10 * max(1, lmax), 0) are
/// clamped to zero; anything below that bound throws
/// NotPositiveSemidefinite.
SymMatrix psd_sqrt(const SymMatrix& a);

/// Shifts a symmetric matrix to positive definiteness when needed.
///
/// Returns (A, false) when lmin(A) > 0; otherwise ((A + dI)/(1 + d), true)
/// with d = |lmin(A)| + 0.05, which keeps the result a convex blend of A
/// and the identity and guarantees lmin >= 0.05/(1 + d).
std::pair<SymMatrix, bool> psd_repair(const SymMatrix& a);

/// n draws from N(mean, sqrt_cov^2), rows filled in draw order (row by row,
/// coordinate by coordinate), so output is reproducible bit-for-bit from
/// the stream state.
SampleMatrix mvn_sample(RngStream& rng, const Eigen::VectorXd& mean,
                        const SymMatrix& sqrt_cov, int n);

namespace detail {
// Square root from an existing decomposition; negative entries of `values`
// are clamped to zero before the root is taken.
SymMatrix sqrt_from_eigen(const SymEigen& eig, const Eigen::VectorXd& values);
}  // namespace detail

}  // namespace hdnt

#endif  // HDNT_LINALG_HPP

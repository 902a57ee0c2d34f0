#include "hdnt/linalg.hpp"

#include <cmath>
#include <vector>

#include "hdnt/errors.hpp"

namespace hdnt {

SampleMatrix::SampleMatrix(int n, int d) {
  if (n < 0) throw ShapeError("SampleMatrix: negative row count");
  if (d < 1) throw ShapeError("SampleMatrix: dimension must be at least 1");
  rows_ = RowMajorMatrix::Zero(n, d);
}

SampleMatrix::SampleMatrix(RowMajorMatrix rows) : rows_(std::move(rows)) {
  if (rows_.cols() < 1) {
    throw ShapeError("SampleMatrix: dimension must be at least 1");
  }
}

SampleMatrix SampleMatrix::select_columns(const std::vector<int>& cols) const {
  if (cols.empty()) throw ShapeError("select_columns: empty column set");
  RowMajorMatrix out(rows_.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const int c = cols[k];
    if (c < 0 || c >= dim()) throw ShapeError("select_columns: column out of range");
    out.col(static_cast<Eigen::Index>(k)) = rows_.col(c);
  }
  return SampleMatrix(std::move(out));
}

SymMatrix::SymMatrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ShapeError("SymMatrix: matrix must be square");
  if (a.rows() < 1) throw ShapeError("SymMatrix: dimension must be at least 1");
  m_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::identity(int d) {
  return SymMatrix(Eigen::MatrixXd::Identity(d, d));
}

SymMatrix SymMatrix::from_diagonal(const Eigen::VectorXd& diag) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(diag.size(), diag.size());
  m.diagonal() = diag;
  return SymMatrix(m);
}

double SymMatrix::spectral_norm() const {
  const SymEigen eig = sym_eigen(*this);
  return std::max(std::abs(eig.values(0)), std::abs(eig.values(dim() - 1)));
}

SymEigen sym_eigen(const SymMatrix& a) {
  if (!a.all_finite()) throw InvalidMatrix("sym_eigen: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("sym_eigen: eigen iteration did not converge");
  }
  return SymEigen{solver.eigenvalues(), solver.eigenvectors()};
}

namespace detail {

// Reconstructs U diag(sqrt(values)) U^T. Negative values within the
// round-off band must already be clamped by the caller.
SymMatrix sqrt_from_eigen(const SymEigen& eig, const Eigen::VectorXd& values) {
  const Eigen::VectorXd root = values.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd r =
      eig.vectors * root.asDiagonal() * eig.vectors.transpose();
  return SymMatrix(r);
}

}  // namespace detail

SymMatrix psd_sqrt(const SymMatrix& a) {
  const SymEigen eig = sym_eigen(a);
  const double lmax = eig.values(a.dim() - 1);
  const double tol = 1e-10 * std::max(1.0, lmax);
  if (eig.values(0) < -tol) {
    throw NotPositiveSemidefinite("psd_sqrt: eigenvalue below -1e-10*max(1, lmax)");
  }
  return detail::sqrt_from_eigen(eig, eig.values);
}

std::pair<SymMatrix, bool> psd_repair(const SymMatrix& a) {
  const SymEigen eig = sym_eigen(a);
  const double lmin = eig.values(0);
  if (lmin > 0.0) return {a, false};
  const double delta = std::abs(lmin) + 0.05;
  const int d = a.dim();
  Eigen::MatrixXd shifted =
      (a.mat() + delta * Eigen::MatrixXd::Identity(d, d)) / (1.0 + delta);
  return {SymMatrix(shifted), true};
}

SampleMatrix mvn_sample(RngStream& rng, const Eigen::VectorXd& mean,
                        const SymMatrix& sqrt_cov, int n) {
  const int d = sqrt_cov.dim();
  if (mean.size() != d) {
    throw DimensionMismatch("mvn_sample: mean and sqrt_cov dimensions differ");
  }
  if (n < 0) throw ShapeError("mvn_sample: negative sample size");
  RowMajorMatrix z(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) z(i, j) = rng.normal();
  }
  RowMajorMatrix out = z * sqrt_cov.mat();
  out.rowwise() += mean.transpose();
  return SampleMatrix(std::move(out));
}

}  // namespace hdnt

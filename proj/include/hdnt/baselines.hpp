#ifndef HDNT_BASELINES_HPP
#define HDNT_BASELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hdnt/covariance.hpp"

namespace hdnt {

enum class BaselineMethod { mardia_skew, mardia_kurt, bonferroni, efr, efr0 };

std::string to_string(BaselineMethod m);

struct BaselineReport {
  BaselineMethod method;
  double statistic;
  double p_value;
  double alpha;
  bool reject;  // p_value <= alpha
};

/// Moment-based normality tests: skewness b1 referred to a chi-squared
/// law, kurtosis b2 to its normal approximation, and their Bonferroni
/// combination. Requires n > d so the sample covariance is invertible.
struct MardiaResult {
  double b1;  // multivariate skewness
  double b2;  // multivariate kurtosis
  BaselineReport skewness;
  BaselineReport kurtosis;
  BaselineReport bonferroni;
};

MardiaResult mardia_tests(const SampleMatrix& x, double alpha);

/// Minimum spanning tree of the complete graph on m points with squared
/// Euclidean edge weights.
struct MstEdgeList {
  struct Edge {
    int i;  // i < j
    int j;
    double weight;
  };
  int m;
  std::vector<Edge> edges;  // exactly m - 1
};

/// Dense Prim construction, ties broken toward the lexicographically
/// smallest (i, j) pair. Throws InsufficientPoints when m < 2.
MstEdgeList euclidean_mst(const SampleMatrix& points);

/// Number of tree edges joining an X point (index < n) to a Y point.
int cross_edge_count(const MstEdgeList& mst, const std::vector<bool>& is_y);

/// How the eFR null distribution is built.
///
/// `bootstrap` repeats the generate-refit-regenerate cycle and recomputes
/// the cross count on each synthetic (X*, Y*) pool, which absorbs the
/// estimated-parameter bias of the single pooled tree. `permutation`
/// relabels the fixed observed tree; it is exact for exchangeable groups
/// but mildly anti-conservative here because the synthetic sample is
/// centered on the observed sample mean.
enum class EfrCalibration { bootstrap, permutation };

std::string to_string(EfrCalibration c);
EfrCalibration efr_calibration_from_string(const std::string& s);

struct EfrOptions {
  Estimator estimator = Estimator::adaptive();
  int n_perm = 500;  // null draws: bootstrap iterations or relabelings
  double alpha = 0.05;
  std::uint64_t seed = 0;
  EfrCalibration calibration = EfrCalibration::bootstrap;
  int threads = 1;
};

/// Friedman-Rafsky style normality check: the observed sample is pooled
/// with a synthetic Gaussian sample of equal size and the number of
/// minimum-spanning-tree edges joining the two groups is referred to a
/// Monte-Carlo null (two-sided deviation rule around the null mean).
BaselineReport efr_test(const SampleMatrix& x, const EfrOptions& options);

}  // namespace hdnt

#endif  // HDNT_BASELINES_HPP

#ifndef HDNT_NORMTEST_HPP
#define HDNT_NORMTEST_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hdnt/covariance.hpp"
#include "hdnt/nnstat.hpp"

namespace hdnt {

/// Result of one normality test run.
struct TestReport {
  NnStat r_obs;                    // observed fraction on the (X, Y) pool
  std::vector<double> null_draws;  // B bootstrap fractions
  double null_mean;                // m, arithmetic mean of null_draws
  double p_value;                  // count / B, two-sided deviation rule
  double p_value_conservative;     // (count + 1) / (B + 1)
  double alpha;
  bool reject;                     // p_value <= alpha
  std::uint64_t seed;
  int B;
  NnVariant variant;
  Estimator estimator;
  double wall_time_seconds;        // diagnostic only, not reproducible
};

/// Two-sided Monte-Carlo p-value around the null mean.
///
/// Returns (p, m) with m = mean(null_draws) and
/// p = #{b : |draw_b - m| >= |r_obs - m|} / B. Throws EmptyNull when
/// null_draws is empty.
std::pair<double, double> two_sided_pvalue(double r_obs,
                                           const std::vector<double>& null_draws);

struct NormalityTestOptions {
  int B = 500;
  double alpha = 0.05;
  Estimator estimator = Estimator::adaptive();
  NnVariant variant = NnVariant::YY;
  std::uint64_t seed = 0;
  int threads = 1;  // bootstrap iterations run on up to this many threads
};

/// The nearest-neighbor normality test with parametric bootstrap
/// calibration.
///
/// Fits (mean, cov) from x, draws a synthetic Gaussian sample Y of the
/// same size and computes the observed self-neighbor fraction. Each of the
/// B bootstrap iterations re-generates a pair (X*, Y*) through the full
/// fit-and-sample pipeline with the same estimator and contributes one
/// null draw. All randomness is derived from `seed` via per-iteration
/// substreams, so serial and parallel runs agree bit-for-bit.
TestReport nn_normality_test(const SampleMatrix& x,
                             const NormalityTestOptions& options);

}  // namespace hdnt

#endif  // HDNT_NORMTEST_HPP

#include "hdnt/normtest.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "hdnt/errors.hpp"
#include "hdnt/parallel.hpp"

namespace hdnt {

std::pair<double, double> two_sided_pvalue(
    double r_obs, const std::vector<double>& null_draws) {
  if (null_draws.empty()) throw EmptyNull("two_sided_pvalue: no null draws");
  const double m =
      std::accumulate(null_draws.begin(), null_draws.end(), 0.0) /
      static_cast<double>(null_draws.size());
  const double observed_dev = std::abs(r_obs - m);
  std::size_t count = 0;
  for (const double draw : null_draws) {
    if (std::abs(draw - m) >= observed_dev) ++count;
  }
  return {static_cast<double>(count) / static_cast<double>(null_draws.size()), m};
}

TestReport nn_normality_test(const SampleMatrix& x,
                             const NormalityTestOptions& options) {
  if (options.B < 1) throw InvalidConfig("nn_normality_test: B must be >= 1");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw InvalidConfig("nn_normality_test: alpha must lie in (0, 1)");
  }
  if (x.n() < 2) throw InsufficientSample("nn_normality_test: need n >= 2");

  const auto start = std::chrono::steady_clock::now();
  const int n = x.n();
  const RngStream master(options.seed);

  // Step 1: fit the data, draw the synthetic Gaussian companion sample,
  // and record the observed fraction.
  const GaussianModel model = fit_gaussian_model(x, options.estimator);
  RngStream step1 = master.substream(0);
  const SampleMatrix y = mvn_sample(step1, model.mean, model.sqrt_cov, n);
  const NnStat r_obs = nn_fraction(PooledSample(x, y), options.variant);

  // Steps 2-3: B independent generate-refit-regenerate iterations, one
  // substream each; results land in per-index slots.
  std::vector<double> null_draws(options.B);
  parallel_for(options.B, options.threads, [&](std::int64_t b) {
    RngStream sub = master.substream(static_cast<std::uint64_t>(b) + 1);
    const SampleMatrix x_star = mvn_sample(sub, model.mean, model.sqrt_cov, n);
    const GaussianModel refit = fit_gaussian_model(x_star, options.estimator);
    const SampleMatrix y_star = mvn_sample(sub, refit.mean, refit.sqrt_cov, n);
    null_draws[b] = nn_fraction(PooledSample(x_star, y_star), options.variant).r;
  });

  // Steps 4-5: two-sided deviation p-value and the alpha decision.
  const auto [p, m] = two_sided_pvalue(r_obs.r, null_draws);
  const std::size_t count = static_cast<std::size_t>(std::llround(p * options.B));
  const double p_conservative =
      static_cast<double>(count + 1) / static_cast<double>(options.B + 1);

  const auto end = std::chrono::steady_clock::now();
  return TestReport{r_obs,
                    std::move(null_draws),
                    m,
                    p,
                    p_conservative,
                    options.alpha,
                    p <= options.alpha,
                    options.seed,
                    options.B,
                    options.variant,
                    options.estimator,
                    std::chrono::duration<double>(end - start).count()};
}

}  // namespace hdnt

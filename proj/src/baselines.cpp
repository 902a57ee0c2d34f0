#include "hdnt/baselines.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "hdnt/errors.hpp"
#include "hdnt/nnstat.hpp"
#include "hdnt/normtest.hpp"
#include "hdnt/parallel.hpp"

namespace hdnt {

std::string to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::mardia_skew: return "mardia_skew";
    case BaselineMethod::mardia_kurt: return "mardia_kurt";
    case BaselineMethod::bonferroni: return "bonferroni";
    case BaselineMethod::efr: return "efr";
    case BaselineMethod::efr0: return "efr0";
  }
  return "?";
}

namespace {

double chi_squared_upper_tail(double statistic, double dof) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

double normal_two_sided(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace

MardiaResult mardia_tests(const SampleMatrix& x, double alpha) {
  const int n = x.n();
  const int d = x.dim();
  if (n < 2) throw InsufficientSample("mardia_tests: need n >= 2");
  if (n <= d) throw SingularCovariance("mardia_tests: need n > d");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidConfig("mardia_tests: alpha must lie in (0, 1)");
  }

  auto [mean, s] = sample_moments(x);
  RowMajorMatrix centered = x.data();
  centered.rowwise() -= mean.transpose();

  Eigen::LDLT<Eigen::MatrixXd> ldlt(s.mat());
  const double dmax = ldlt.vectorD().maxCoeff();
  const double dmin = ldlt.vectorD().minCoeff();
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || dmax <= 0.0 ||
      dmin <= 1e-12 * dmax) {
    throw SingularCovariance("mardia_tests: sample covariance not invertible");
  }
  // g = C S^{-1} C^T, the matrix of standardized cross moments.
  const Eigen::MatrixXd solved = ldlt.solve(centered.transpose());
  const Eigen::MatrixXd g = centered * solved;

  double b1 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = g(i, j);
      b1 += v * v * v;
    }
  }
  b1 /= static_cast<double>(n) * n;

  double b2 = 0.0;
  for (int i = 0; i < n; ++i) b2 += g(i, i) * g(i, i);
  b2 /= n;

  const double skew_stat = n * b1 / 6.0;
  const double skew_dof = d * (d + 1.0) * (d + 2.0) / 6.0;
  const double p_skew = chi_squared_upper_tail(skew_stat, skew_dof);

  const double kurt_mean = d * (d + 2.0);
  const double kurt_sd = std::sqrt(8.0 * d * (d + 2.0) / n);
  const double z = (b2 - kurt_mean) / kurt_sd;
  const double p_kurt = normal_two_sided(z);

  const double p_bonf = std::min(1.0, 2.0 * std::min(p_skew, p_kurt));

  return MardiaResult{
      b1,
      b2,
      BaselineReport{BaselineMethod::mardia_skew, skew_stat, p_skew, alpha,
                     p_skew <= alpha},
      BaselineReport{BaselineMethod::mardia_kurt, z, p_kurt, alpha,
                     p_kurt <= alpha},
      BaselineReport{BaselineMethod::bonferroni, std::min(p_skew, p_kurt),
                     p_bonf, alpha, p_bonf <= alpha}};
}

MstEdgeList euclidean_mst(const SampleMatrix& points) {
  const int m = points.n();
  const int d = points.dim();
  if (m < 2) throw InsufficientPoints("euclidean_mst: need at least 2 points");
  if (!points.all_finite()) {
    throw InvalidMatrix("euclidean_mst: non-finite coordinates");
  }

  const double* base = points.data().data();
  auto dist2 = [&](int a, int b) {
    const double* pa = base + static_cast<std::ptrdiff_t>(a) * d;
    const double* pb = base + static_cast<std::ptrdiff_t>(b) * d;
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
      const double diff = pa[k] - pb[k];
      s += diff * diff;
    }
    return s;
  };

  // Candidate edge for each outside vertex, compared as (weight, i, j)
  // with i < j so ties resolve to the lexicographically smallest pair.
  struct Candidate {
    double weight = std::numeric_limits<double>::infinity();
    int a = std::numeric_limits<int>::max();
    int b = std::numeric_limits<int>::max();
    bool operator<(const Candidate& o) const {
      if (weight != o.weight) return weight < o.weight;
      if (a != o.a) return a < o.a;
      return b < o.b;
    }
  };

  std::vector<Candidate> cand(m);
  std::vector<bool> in_tree(m, false);
  in_tree[0] = true;
  for (int v = 1; v < m; ++v) cand[v] = Candidate{dist2(0, v), 0, v};

  MstEdgeList out;
  out.m = m;
  out.edges.reserve(m - 1);
  for (int step = 1; step < m; ++step) {
    int u = -1;
    for (int v = 0; v < m; ++v) {
      if (!in_tree[v] && (u == -1 || cand[v] < cand[u])) u = v;
    }
    in_tree[u] = true;
    out.edges.push_back(MstEdgeList::Edge{cand[u].a, cand[u].b, cand[u].weight});
    for (int v = 0; v < m; ++v) {
      if (in_tree[v]) continue;
      Candidate c{dist2(u, v), std::min(u, v), std::max(u, v)};
      if (c < cand[v]) cand[v] = c;
    }
  }
  return out;
}

int cross_edge_count(const MstEdgeList& mst, const std::vector<bool>& is_y) {
  int r = 0;
  for (const auto& e : mst.edges) {
    if (is_y[e.i] != is_y[e.j]) ++r;
  }
  return r;
}

std::string to_string(EfrCalibration c) {
  return c == EfrCalibration::bootstrap ? "bootstrap" : "permutation";
}

EfrCalibration efr_calibration_from_string(const std::string& s) {
  if (s == "bootstrap") return EfrCalibration::bootstrap;
  if (s == "permutation") return EfrCalibration::permutation;
  throw InvalidConfig("unknown eFR calibration: " + s);
}

namespace {

// Cross count of the MST built on pool(a, b) with the natural labels.
int pooled_cross_count(const SampleMatrix& a, const SampleMatrix& b) {
  const PooledSample pool(a, b);
  const MstEdgeList mst = euclidean_mst(pool.points());
  std::vector<bool> is_y(2 * a.n(), false);
  for (int i = a.n(); i < 2 * a.n(); ++i) is_y[i] = true;
  return cross_edge_count(mst, is_y);
}

}  // namespace

BaselineReport efr_test(const SampleMatrix& x, const EfrOptions& options) {
  if (options.n_perm < 1) throw InvalidConfig("efr_test: n_perm must be >= 1");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw InvalidConfig("efr_test: alpha must lie in (0, 1)");
  }
  if (x.n() < 2) throw InsufficientSample("efr_test: need n >= 2");

  const int n = x.n();
  const RngStream master(options.seed);

  const GaussianModel model = fit_gaussian_model(x, options.estimator);
  RngStream draw = master.substream(0);
  const SampleMatrix y = mvn_sample(draw, model.mean, model.sqrt_cov, n);
  const int r_obs = pooled_cross_count(x, y);

  std::vector<double> null_draws(options.n_perm);
  if (options.calibration == EfrCalibration::bootstrap) {
    // Same second-generation scheme as the nearest-neighbor test, with
    // the cross count as the statistic.
    parallel_for(options.n_perm, options.threads, [&](std::int64_t b) {
      RngStream sub = master.substream(static_cast<std::uint64_t>(b) + 1);
      const SampleMatrix x_star = mvn_sample(sub, model.mean, model.sqrt_cov, n);
      const GaussianModel refit = fit_gaussian_model(x_star, options.estimator);
      const SampleMatrix y_star = mvn_sample(sub, refit.mean, refit.sqrt_cov, n);
      null_draws[b] = static_cast<double>(pooled_cross_count(x_star, y_star));
    });
  } else {
    // Relabelings of the fixed observed tree: each draw picks n of the 2n
    // pooled points as the X group.
    const PooledSample pool(x, y);
    const MstEdgeList mst = euclidean_mst(pool.points());
    parallel_for(options.n_perm, options.threads, [&](std::int64_t b) {
      RngStream sub = master.substream(static_cast<std::uint64_t>(b) + 1);
      const std::vector<int> xs = sample_without_replacement(n, 2 * n, sub);
      std::vector<bool> is_y(2 * n, true);
      for (const int i : xs) is_y[i] = false;
      null_draws[b] = static_cast<double>(cross_edge_count(mst, is_y));
    });
  }

  const auto [p, m] = two_sided_pvalue(static_cast<double>(r_obs), null_draws);
  const BaselineMethod method = options.estimator.kind == Estimator::Kind::sample
                                    ? BaselineMethod::efr0
                                    : BaselineMethod::efr;
  return BaselineReport{method, static_cast<double>(r_obs), p, options.alpha,
                        p <= options.alpha};
}

}  // namespace hdnt

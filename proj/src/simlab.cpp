#include "hdnt/simlab.hpp"

#include <chrono>
#include <sstream>

#include "hdnt/baselines.hpp"
#include "hdnt/config.hpp"
#include "hdnt/errors.hpp"
#include "hdnt/normtest.hpp"
#include "hdnt/parallel.hpp"

namespace hdnt {

std::string to_string(CovSpec::Model m) {
  switch (m) {
    case CovSpec::Model::model1: return "model1";
    case CovSpec::Model::model2: return "model2";
    case CovSpec::Model::model3: return "model3";
  }
  return "?";
}

CovSpec::Model cov_model_from_string(const std::string& s) {
  if (s == "model1" || s == "1") return CovSpec::Model::model1;
  if (s == "model2" || s == "2") return CovSpec::Model::model2;
  if (s == "model3" || s == "3") return CovSpec::Model::model3;
  throw InvalidConfig("unknown covariance model: " + s);
}

std::string to_string(AltSpec::Family f) {
  switch (f) {
    case AltSpec::Family::gaussian_null: return "gaussian_null";
    case AltSpec::Family::multivariate_t: return "multivariate_t";
    case AltSpec::Family::mixture_gaussian: return "mixture_gaussian";
  }
  return "?";
}

AltSpec::Family alt_family_from_string(const std::string& s) {
  if (s == "gaussian_null" || s == "gaussian" || s == "null") {
    return AltSpec::Family::gaussian_null;
  }
  if (s == "multivariate_t" || s == "t") return AltSpec::Family::multivariate_t;
  if (s == "mixture_gaussian" || s == "mixture") {
    return AltSpec::Family::mixture_gaussian;
  }
  throw InvalidConfig("unknown alternative family: " + s);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::new_yy: return "new_yy";
    case Method::new_xx: return "new_xx";
    case Method::efr: return "efr";
    case Method::efr0: return "efr0";
    case Method::mardia_skew: return "mardia_skew";
    case Method::mardia_kurt: return "mardia_kurt";
    case Method::mardia_bonferroni: return "mardia_bonferroni";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "new_yy" || s == "new") return Method::new_yy;
  if (s == "new_xx") return Method::new_xx;
  if (s == "efr") return Method::efr;
  if (s == "efr0") return Method::efr0;
  if (s == "mardia_skew") return Method::mardia_skew;
  if (s == "mardia_kurt") return Method::mardia_kurt;
  if (s == "mardia_bonferroni" || s == "bonferroni") {
    return Method::mardia_bonferroni;
  }
  throw InvalidConfig("unknown method: " + s);
}

SymMatrix make_covariance(const CovSpec& spec) {
  const int d = spec.d;
  if (d < 1) throw InvalidConfig("make_covariance: d must be >= 1");
  switch (spec.model) {
    case CovSpec::Model::model1:
      return SymMatrix::identity(d);
    case CovSpec::Model::model2: {
      Eigen::MatrixXd m(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = std::pow(0.5, std::abs(i - j));
      }
      return SymMatrix(m);
    }
    case CovSpec::Model::model3: {
      // Unit diagonal, sparse Unif(0,1)*Bernoulli(0.02) upper triangle
      // mirrored, then the definiteness shift (S + dI)/(1 + d).
      RngStream rng(spec.seed);
      Eigen::MatrixXd star = Eigen::MatrixXd::Identity(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          const double value = rng.uniform();
          const bool keep = rng.uniform() < 0.02;
          star(i, j) = star(j, i) = keep ? value : 0.0;
        }
      }
      const SymEigen eig = sym_eigen(SymMatrix(star));
      const double delta = std::abs(eig.values(0)) + 0.05;
      return SymMatrix((star + delta * Eigen::MatrixXd::Identity(d, d)) /
                       (1.0 + delta));
    }
  }
  throw InvalidConfig("make_covariance: unreachable model");
}

SampleMatrix draw_sample_with_sqrt(const AltSpec& alt, const SymMatrix& sqrt_cov,
                                   int n, RngStream& rng) {
  if (n < 1) throw InvalidConfig("draw_sample: n must be >= 1");
  const int d = sqrt_cov.dim();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);

  switch (alt.family) {
    case AltSpec::Family::gaussian_null:
      return mvn_sample(rng, zero, sqrt_cov, n);

    case AltSpec::Family::multivariate_t: {
      // Row i is z_i * sqrt_cov / sqrt(w_i / nu): the design matrix is the
      // t scale matrix. Draw order per row: coordinates, then the
      // chi-squared divisor.
      const double nu = AltSpec::t_dof(d);
      RowMajorMatrix z(n, d);
      Eigen::VectorXd w(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) z(i, j) = rng.normal();
        w(i) = rng.chi_squared(nu);
      }
      RowMajorMatrix out = z * sqrt_cov.mat();
      for (int i = 0; i < n; ++i) out.row(i) /= std::sqrt(w(i) / nu);
      return SampleMatrix(std::move(out));
    }

    case AltSpec::Family::mixture_gaussian: {
      // Equal-weight mixture of N(0, (1-a) Sigma) and N(0, (1+a) Sigma);
      // the population covariance is exactly Sigma. Draw order per row:
      // component pick, then coordinates.
      const double a = AltSpec::mixture_spread(d);
      if (!(a > 0.0 && a < 1.0)) {
        throw InvalidConfig("mixture alternative requires d >= 4 so a < 1");
      }
      const double lo = std::sqrt(1.0 - a);
      const double hi = std::sqrt(1.0 + a);
      RowMajorMatrix z(n, d);
      Eigen::VectorXd scale(n);
      for (int i = 0; i < n; ++i) {
        scale(i) = rng.uniform() < 0.5 ? lo : hi;
        for (int j = 0; j < d; ++j) z(i, j) = rng.normal();
      }
      RowMajorMatrix out = z * sqrt_cov.mat();
      for (int i = 0; i < n; ++i) out.row(i) *= scale(i);
      return SampleMatrix(std::move(out));
    }
  }
  throw InvalidConfig("draw_sample: unreachable family");
}

SampleMatrix draw_sample(const AltSpec& alt, const SymMatrix& cov, int n,
                         RngStream& rng) {
  return draw_sample_with_sqrt(alt, psd_sqrt(cov), n, rng);
}

std::pair<double, double> wilson_interval_95(int successes, int trials) {
  if (trials < 1) throw InvalidConfig("wilson_interval_95: trials must be >= 1");
  const double z = 1.959963984540054;
  const double nt = trials;
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  // Round-off in center - half can leave the boundary cases epsilon away
  // from their exact endpoints.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

double replicate_pvalue(const ExperimentSpec& spec, const SampleMatrix& data,
                        std::uint64_t test_seed) {
  switch (spec.method) {
    case Method::new_yy:
    case Method::new_xx: {
      NormalityTestOptions opt;
      opt.B = spec.B;
      opt.alpha = spec.alpha;
      opt.estimator = Estimator::adaptive(spec.delta);
      opt.variant =
          spec.method == Method::new_yy ? NnVariant::YY : NnVariant::XX;
      opt.seed = test_seed;
      opt.threads = 1;
      return nn_normality_test(data, opt).p_value;
    }
    case Method::efr:
    case Method::efr0: {
      EfrOptions opt;
      opt.estimator = spec.method == Method::efr ? Estimator::adaptive(spec.delta)
                                                 : Estimator::sample();
      opt.n_perm = spec.B;
      opt.alpha = spec.alpha;
      opt.seed = test_seed;
      opt.calibration = spec.efr_calibration;
      opt.threads = 1;
      return efr_test(data, opt).p_value;
    }
    case Method::mardia_skew:
      return mardia_tests(data, spec.alpha).skewness.p_value;
    case Method::mardia_kurt:
      return mardia_tests(data, spec.alpha).kurtosis.p_value;
    case Method::mardia_bonferroni:
      return mardia_tests(data, spec.alpha).bonferroni.p_value;
  }
  throw InvalidConfig("run_experiment: unreachable method");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads) {
  if (spec.replications < 1) {
    throw InvalidConfig("run_experiment: replications must be >= 1");
  }
  if (spec.n < 2) throw InvalidConfig("run_experiment: n must be >= 2");
  const auto start = std::chrono::steady_clock::now();

  // One covariance design per experiment unless redraws are requested.
  SymMatrix shared_cov = make_covariance(spec.cov);
  SymMatrix shared_sqrt = psd_sqrt(shared_cov);

  std::vector<double> pvalues(spec.replications);
  parallel_for(spec.replications, threads, [&](std::int64_t i) {
    const std::uint64_t base = derive_seed(spec.seed, static_cast<std::uint64_t>(i) + 1);
    RngStream data_rng(derive_seed(base, 0));
    const std::uint64_t test_seed = derive_seed(base, 1);

    SampleMatrix data(1, 1);
    if (spec.redraw_cov && spec.cov.model == CovSpec::Model::model3) {
      CovSpec fresh = spec.cov;
      fresh.seed = derive_seed(spec.cov.seed, static_cast<std::uint64_t>(i) + 1);
      const SymMatrix cov_i = make_covariance(fresh);
      data = draw_sample_with_sqrt(spec.alt, psd_sqrt(cov_i), spec.n, data_rng);
    } else {
      data = draw_sample_with_sqrt(spec.alt, shared_sqrt, spec.n, data_rng);
    }
    pvalues[i] = replicate_pvalue(spec, data, test_seed);
  });

  int rejections = 0;
  for (const double p : pvalues) {
    if (p <= spec.alpha) ++rejections;
  }
  const auto [lo, hi] = wilson_interval_95(rejections, spec.replications);
  const auto end = std::chrono::steady_clock::now();
  return ExperimentResult{
      static_cast<double>(rejections) / spec.replications,
      spec.replications,
      lo,
      hi,
      std::move(pvalues),
      spec,
      std::chrono::duration<double>(end - start).count()};
}

std::string to_config_text(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "# experiment configuration\n";
  out << "model = " << to_string(spec.cov.model) << "\n";
  out << "d = " << spec.cov.d << "\n";
  out << "cov_seed = " << spec.cov.seed << "\n";
  out << "alt = " << to_string(spec.alt.family) << "\n";
  out << "n = " << spec.n << "\n";
  out << "method = " << to_string(spec.method) << "\n";
  out << "B = " << spec.B << "\n";
  out << "alpha = " << format_double(spec.alpha) << "\n";
  out << "delta = " << format_double(spec.delta) << "\n";
  out << "reps = " << spec.replications << "\n";
  out << "seed = " << spec.seed << "\n";
  out << "redraw_cov = " << (spec.redraw_cov ? 1 : 0) << "\n";
  out << "efr_calibration = " << to_string(spec.efr_calibration) << "\n";
  return out.str();
}

ExperimentSpec parse_experiment_config(const std::string& text) {
  const KeyValueConfig cfg = parse_key_value_config(text);
  ExperimentSpec spec;
  for (const auto& [key, value] : cfg.entries) {
    if (key == "model") spec.cov.model = cov_model_from_string(value);
    else if (key == "d") spec.cov.d = config_int(key, value);
    else if (key == "cov_seed") spec.cov.seed = config_uint64(key, value);
    else if (key == "alt") spec.alt.family = alt_family_from_string(value);
    else if (key == "n") spec.n = config_int(key, value);
    else if (key == "method") spec.method = method_from_string(value);
    else if (key == "B") spec.B = config_int(key, value);
    else if (key == "alpha") spec.alpha = config_double(key, value);
    else if (key == "delta") spec.delta = config_double(key, value);
    else if (key == "reps") spec.replications = config_int(key, value);
    else if (key == "seed") spec.seed = config_uint64(key, value);
    else if (key == "redraw_cov") spec.redraw_cov = config_int(key, value) != 0;
    else if (key == "efr_calibration") {
      spec.efr_calibration = efr_calibration_from_string(value);
    }
    else throw InvalidConfig("unknown experiment config key: " + key);
  }
  return spec;
}

}  // namespace hdnt

#ifndef HDNT_SIMLAB_HPP
#define HDNT_SIMLAB_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hdnt/baselines.hpp"
#include "hdnt/covariance.hpp"
#include "hdnt/nnstat.hpp"

namespace hdnt {

/// Covariance designs for the simulation studies: identity, geometric
/// decay 0.5^|i-j|, and a sparse random design with unit diagonal whose
/// indefiniteness is removed by the (S + dI)/(1 + d) shift.
struct CovSpec {
  enum class Model { model1, model2, model3 };
  Model model = Model::model1;
  int d = 1;
  std::uint64_t seed = 0;  // model3 only: its matrix is itself random
};

std::string to_string(CovSpec::Model m);
CovSpec::Model cov_model_from_string(const std::string& s);

/// Data-generating families: the Gaussian null, a multivariate t with
/// nu = d/2 (covariance spec as scale matrix), and a two-component
/// Gaussian scale mixture with a = 1.8/sqrt(d).
struct AltSpec {
  enum class Family { gaussian_null, multivariate_t, mixture_gaussian };
  Family family = Family::gaussian_null;

  static double t_dof(int d) { return 0.5 * d; }
  static double mixture_spread(int d) { return 1.8 / std::sqrt(static_cast<double>(d)); }
};

std::string to_string(AltSpec::Family f);
AltSpec::Family alt_family_from_string(const std::string& s);

/// Test procedures the experiment harness can dispatch.
enum class Method {
  new_yy,
  new_xx,
  efr,
  efr0,
  mardia_skew,
  mardia_kurt,
  mardia_bonferroni,
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Full configuration of one size/power experiment. Serializes to and
/// from the plain-text `key = value` config format.
struct ExperimentSpec {
  CovSpec cov;
  AltSpec alt;
  int n = 100;
  Method method = Method::new_yy;
  int B = 500;            // bootstrap iterations (or permutations for eFR)
  double alpha = 0.05;
  double delta = 2.0;     // thresholding constant for adaptive estimators
  int replications = 1000;
  std::uint64_t seed = 0;
  bool redraw_cov = false;  // model3: fresh covariance per replication
  EfrCalibration efr_calibration = EfrCalibration::bootstrap;
};

std::string to_config_text(const ExperimentSpec& spec);
ExperimentSpec parse_experiment_config(const std::string& text);

struct ExperimentResult {
  double rejection_rate;
  int replications;
  double wilson_low;   // 95% score interval for the rejection probability
  double wilson_high;
  std::vector<double> per_replicate_pvalues;
  ExperimentSpec spec;
  double total_time_seconds;
};

/// The covariance matrix named by the design. model3 output is a
/// deterministic function of its seed.
SymMatrix make_covariance(const CovSpec& spec);

/// n rows from the chosen family with the given covariance design.
SampleMatrix draw_sample(const AltSpec& alt, const SymMatrix& cov, int n,
                         RngStream& rng);

/// As draw_sample, but reusing an already computed square root of the
/// covariance (the harness draws many samples from one design).
SampleMatrix draw_sample_with_sqrt(const AltSpec& alt, const SymMatrix& sqrt_cov,
                                   int n, RngStream& rng);

/// Runs `replications` independent datasets through the chosen test and
/// aggregates the rejection rate. Replication i derives its own seed from
/// the master seed, so results are independent of the execution schedule.
ExperimentResult run_experiment(const ExperimentSpec& spec, int threads);

/// 95% Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval_95(int successes, int trials);

}  // namespace hdnt

#endif  // HDNT_SIMLAB_HPP

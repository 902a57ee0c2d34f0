// hdnt: nearest-neighbor normality testing for high-dimensional data.
//
// Subcommands: `test` runs the test on one CSV dataset, `size` and `power`
// drive the Monte-Carlo experiment harness, `genes` runs the repeated
// column-subset protocol, `baseline` runs the comparison tests.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <iostream>
#include <string>

#include "hdnt/baselines.hpp"
#include "hdnt/config.hpp"
#include "hdnt/csv.hpp"
#include "hdnt/errors.hpp"
#include "hdnt/genes.hpp"
#include "hdnt/normtest.hpp"
#include "hdnt/parallel.hpp"
#include "hdnt/report.hpp"
#include "hdnt/simlab.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    hdnt::write_text_file(out_path, content);
  }
}

struct CommonFlags {
  int B = 500;
  double alpha = 0.05;
  double delta = 2.0;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: HDNT_THREADS env or hardware default
  std::string format = "text";
  std::string out_path;
};

struct CommonOptions {
  CLI::Option* B = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* seed = nullptr;
};

CommonOptions add_common(CLI::App* cmd, CommonFlags& f) {
  CommonOptions opts;
  opts.B = cmd->add_option("--B", f.B, "Bootstrap iterations / permutations");
  opts.alpha = cmd->add_option("--alpha", f.alpha, "Significance level");
  opts.delta = cmd->add_option("--delta", f.delta, "Adaptive thresholding constant");
  opts.seed = cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads,
                  "Worker threads (default: HDNT_THREADS env or hardware)");
  cmd->add_option("--format", f.format, "Output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", f.out_path, "Write output to this file");
  return opts;
}

struct CsvFlags {
  std::string path;
  bool header = false;
  std::string orientation = "rows";
};

void add_csv(CLI::App* cmd, CsvFlags& f) {
  cmd->add_option("--csv", f.path, "Input CSV dataset")->required();
  cmd->add_flag("--header", f.header, "First CSV line is a header");
  cmd->add_option("--orientation", f.orientation,
                  "rows: rows are observations; cols: columns are")
      ->check(CLI::IsMember({"rows", "cols"}));
}

hdnt::RunManifest make_manifest(const std::string& subcommand,
                                std::uint64_t seed, const std::string& started) {
  hdnt::RunManifest m;
  m.subcommand = subcommand;
  m.master_seed = seed;
  m.version = kVersion;
  m.started_at = started;
  return m;
}

void finish_manifest(hdnt::RunManifest& m) {
  m.finished_at = utc_timestamp();
  std::cerr << hdnt::manifest_text(m);
}

int run_test(const CsvFlags& csv, const CommonFlags& common,
             const std::string& variant, const std::string& estimator,
             bool conservative, bool diagnostics) {
  const std::string started = utc_timestamp();
  const hdnt::CsvDataset data = hdnt::load_csv(
      csv.path, csv.header, hdnt::orientation_from_string(csv.orientation));

  hdnt::NormalityTestOptions opt;
  opt.B = common.B;
  opt.alpha = common.alpha;
  opt.estimator = estimator == "sample" ? hdnt::Estimator::sample()
                                        : hdnt::Estimator::adaptive(common.delta);
  opt.variant = hdnt::nn_variant_from_string(variant);
  opt.seed = common.seed;
  opt.threads = hdnt::resolve_threads(common.threads);

  const hdnt::TestReport report = hdnt::nn_normality_test(data.matrix, opt);
  std::string rendered =
      hdnt::emit_report(report, hdnt::report_format_from_string(common.format));
  if (conservative && common.format == "text") {
    rendered += "  conservative p-value (count+1)/(B+1): " +
                hdnt::format_double(report.p_value_conservative) + "\n";
  }
  if (diagnostics && common.format == "text") {
    const hdnt::GaussianModel model =
        hdnt::fit_gaussian_model(data.matrix, opt.estimator);
    const hdnt::FitDiagnostics diag = hdnt::fit_diagnostics(data.matrix, model);
    rendered += "  fit diagnostics: lambda_min = " +
                hdnt::format_double(diag.lambda_min) + ", |cov - S|_2 = " +
                hdnt::format_double(diag.spectral_dist_to_sample) +
                (model.repaired ? " (repaired)" : "") + "\n";
  }
  write_output(common.out_path, rendered);

  hdnt::RunManifest m = make_manifest("test", common.seed, started);
  m.flags = {{"csv", csv.path},
             {"header", csv.header ? "1" : "0"},
             {"orientation", csv.orientation},
             {"variant", variant},
             {"estimator", estimator},
             {"B", std::to_string(common.B)},
             {"alpha", hdnt::format_double(common.alpha)},
             {"delta", hdnt::format_double(common.delta)},
             {"seed", std::to_string(common.seed)},
             {"format", common.format}};
  finish_manifest(m);
  return 0;
}

struct ExperimentFlags {
  CommonFlags common;
  std::string model = "model1";
  std::string alt = "gaussian_null";
  std::string method = "new";
  std::string variant = "YY";
  std::string efr_calibration = "bootstrap";
  int n = 100;
  int d = 100;
  int reps = 1000;
  std::uint64_t cov_seed = 0;
  bool redraw_cov = false;
  std::string config_in;
  std::string config_out;

  // Option handles, needed to merge config files with explicit flags.
  CommonOptions common_opts;
  CLI::Option* model_opt = nullptr;
  CLI::Option* alt_opt = nullptr;
  CLI::Option* method_opt = nullptr;
  CLI::Option* variant_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
  CLI::Option* cov_seed_opt = nullptr;
  CLI::Option* redraw_opt = nullptr;
  CLI::Option* efr_cal_opt = nullptr;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool with_alt) {
  f.model_opt = cmd->add_option("--model", f.model, "Covariance design: model1/2/3")
                    ->check(CLI::IsMember({"model1", "model2", "model3", "1", "2", "3"}));
  if (with_alt) {
    f.alt_opt = cmd->add_option("--alt", f.alt, "Alternative: t or mixture")
                    ->check(CLI::IsMember(
                        {"t", "multivariate_t", "mixture", "mixture_gaussian"}));
  }
  f.method_opt = cmd->add_option(
      "--method", f.method,
      "Test: new, efr, efr0, mardia_skew, mardia_kurt, mardia_bonferroni");
  f.variant_opt = cmd->add_option("--variant", f.variant, "NN variant for method new")
                      ->check(CLI::IsMember({"YY", "XX", "yy", "xx"}));
  f.n_opt = cmd->add_option("--n", f.n, "Observations per dataset");
  f.d_opt = cmd->add_option("--d", f.d, "Dimension");
  f.reps_opt = cmd->add_option("--reps", f.reps, "Independent replications");
  f.cov_seed_opt =
      cmd->add_option("--cov-seed", f.cov_seed, "Seed of the model3 covariance draw");
  f.redraw_opt = cmd->add_flag("--redraw-cov", f.redraw_cov,
                               "Fresh model3 covariance per replication");
  f.efr_cal_opt = cmd->add_option("--efr-calibration", f.efr_calibration,
                                  "eFR null: bootstrap or permutation")
                      ->check(CLI::IsMember({"bootstrap", "permutation"}));
  cmd->add_option("--config", f.config_in, "Load experiment config file");
  cmd->add_option("--save-config", f.config_out, "Write resolved config file");
  f.common_opts = add_common(cmd, f.common);
}

hdnt::ExperimentSpec resolve_experiment_spec(const ExperimentFlags& f) {
  hdnt::ExperimentSpec spec;
  const bool from_config = !f.config_in.empty();
  if (from_config) {
    spec = hdnt::parse_experiment_config(hdnt::read_text_file(f.config_in));
  }

  auto given = [](const CLI::Option* opt) { return opt && opt->count() > 0; };

  if (!from_config || given(f.model_opt)) {
    spec.cov.model = hdnt::cov_model_from_string(f.model);
  }
  if (!from_config || given(f.d_opt)) spec.cov.d = f.d;
  if (!from_config || given(f.cov_seed_opt)) spec.cov.seed = f.cov_seed;
  if (!from_config || given(f.alt_opt)) {
    spec.alt.family = hdnt::alt_family_from_string(f.alt);
  }
  if (!from_config || given(f.n_opt)) spec.n = f.n;
  if (!from_config || given(f.method_opt) || given(f.variant_opt)) {
    hdnt::Method method = hdnt::method_from_string(f.method);
    if (method == hdnt::Method::new_yy &&
        hdnt::nn_variant_from_string(f.variant) == hdnt::NnVariant::XX) {
      method = hdnt::Method::new_xx;
    }
    spec.method = method;
  }
  if (!from_config || given(f.common_opts.B)) spec.B = f.common.B;
  if (!from_config || given(f.common_opts.alpha)) spec.alpha = f.common.alpha;
  if (!from_config || given(f.common_opts.delta)) spec.delta = f.common.delta;
  if (!from_config || given(f.reps_opt)) spec.replications = f.reps;
  if (!from_config || given(f.common_opts.seed)) spec.seed = f.common.seed;
  if (!from_config || given(f.redraw_opt)) spec.redraw_cov = f.redraw_cov;
  if (!from_config || given(f.efr_cal_opt)) {
    spec.efr_calibration = hdnt::efr_calibration_from_string(f.efr_calibration);
  }
  return spec;
}

int run_experiment_cmd(const std::string& subcommand, const ExperimentFlags& flags) {
  const std::string started = utc_timestamp();
  hdnt::ExperimentSpec spec = resolve_experiment_spec(flags);
  if (subcommand == "size") spec.alt.family = hdnt::AltSpec::Family::gaussian_null;

  if (!flags.config_out.empty()) {
    hdnt::write_text_file(flags.config_out, hdnt::to_config_text(spec));
  }

  const hdnt::ExperimentResult result =
      hdnt::run_experiment(spec, hdnt::resolve_threads(flags.common.threads));
  write_output(flags.common.out_path,
               hdnt::emit_report(result,
                                 hdnt::report_format_from_string(flags.common.format)));

  hdnt::RunManifest m = make_manifest(subcommand, spec.seed, started);
  m.flags = hdnt::parse_key_value_config(hdnt::to_config_text(spec)).entries;
  m.flags.emplace_back("format", flags.common.format);
  finish_manifest(m);
  return 0;
}

int run_genes(const CsvFlags& csv, const CommonFlags& common, int subset,
              int repeats, const std::string& variant,
              const std::string& estimator) {
  const std::string started = utc_timestamp();
  const hdnt::CsvDataset data = hdnt::load_csv(
      csv.path, csv.header, hdnt::orientation_from_string(csv.orientation));

  hdnt::GeneProtocolOptions opt;
  opt.subset_size = subset;
  opt.repeats = repeats;
  opt.B = common.B;
  opt.alpha = common.alpha;
  opt.estimator = estimator == "sample" ? hdnt::Estimator::sample()
                                        : hdnt::Estimator::adaptive(common.delta);
  opt.variant = hdnt::nn_variant_from_string(variant);
  opt.seed = common.seed;
  opt.threads = hdnt::resolve_threads(common.threads);

  const hdnt::GeneProtocolResult result =
      hdnt::gene_subset_protocol(data.matrix, opt);
  write_output(common.out_path,
               hdnt::emit_report(result, hdnt::report_format_from_string(common.format)));

  hdnt::RunManifest m = make_manifest("genes", common.seed, started);
  m.flags = {{"csv", csv.path},
             {"header", csv.header ? "1" : "0"},
             {"orientation", csv.orientation},
             {"subset", std::to_string(subset)},
             {"repeats", std::to_string(repeats)},
             {"variant", variant},
             {"estimator", estimator},
             {"B", std::to_string(common.B)},
             {"alpha", hdnt::format_double(common.alpha)},
             {"delta", hdnt::format_double(common.delta)},
             {"seed", std::to_string(common.seed)},
             {"format", common.format}};
  finish_manifest(m);
  return 0;
}

int run_baseline(const CsvFlags& csv, const CommonFlags& common,
                 const std::string& method, const std::string& calibration) {
  const std::string started = utc_timestamp();
  const hdnt::CsvDataset data = hdnt::load_csv(
      csv.path, csv.header, hdnt::orientation_from_string(csv.orientation));

  const hdnt::ReportFormat format = hdnt::report_format_from_string(common.format);
  std::string rendered;
  if (method == "mardia") {
    const hdnt::MardiaResult result = hdnt::mardia_tests(data.matrix, common.alpha);
    rendered = hdnt::emit_report(result.skewness, format) +
               hdnt::emit_report(result.kurtosis, format) +
               hdnt::emit_report(result.bonferroni, format);
  } else {
    hdnt::EfrOptions opt;
    opt.estimator = method == "efr" ? hdnt::Estimator::adaptive(common.delta)
                                    : hdnt::Estimator::sample();
    opt.n_perm = common.B;
    opt.alpha = common.alpha;
    opt.seed = common.seed;
    opt.calibration = hdnt::efr_calibration_from_string(calibration);
    opt.threads = hdnt::resolve_threads(common.threads);
    rendered = hdnt::emit_report(hdnt::efr_test(data.matrix, opt), format);
  }
  write_output(common.out_path, rendered);

  hdnt::RunManifest m = make_manifest("baseline", common.seed, started);
  m.flags = {{"csv", csv.path},
             {"header", csv.header ? "1" : "0"},
             {"orientation", csv.orientation},
             {"method", method},
             {"efr_calibration", calibration},
             {"B", std::to_string(common.B)},
             {"alpha", hdnt::format_double(common.alpha)},
             {"delta", hdnt::format_double(common.delta)},
             {"seed", std::to_string(common.seed)},
             {"format", common.format}};
  finish_manifest(m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nearest-neighbor normality testing for high-dimensional data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("hdnt ") + kVersion);

  auto* test_cmd = app.add_subcommand("test", "Test one CSV dataset for normality");
  CsvFlags test_csv;
  CommonFlags test_common;
  std::string test_variant = "YY";
  std::string test_estimator = "adaptive";
  bool conservative = false;
  bool diagnostics = false;
  add_csv(test_cmd, test_csv);
  add_common(test_cmd, test_common);
  test_cmd->add_option("--variant", test_variant, "Statistic variant: YY or XX")
      ->check(CLI::IsMember({"YY", "XX", "yy", "xx"}));
  test_cmd->add_option("--estimator", test_estimator,
                       "Covariance estimator: adaptive or sample")
      ->check(CLI::IsMember({"adaptive", "sample"}));
  test_cmd->add_flag("--conservative-p", conservative,
                     "Also report the (count+1)/(B+1) p-value in text output");
  test_cmd->add_flag("--diagnostics", diagnostics,
                     "Report lambda_min and |cov - S|_2 of the fit");

  auto* size_cmd =
      app.add_subcommand("size", "Empirical size under the Gaussian null");
  ExperimentFlags size_flags;
  add_experiment_flags(size_cmd, size_flags, false);

  auto* power_cmd =
      app.add_subcommand("power", "Empirical power under an alternative");
  ExperimentFlags power_flags;
  power_flags.alt = "t";
  add_experiment_flags(power_cmd, power_flags, true);

  auto* genes_cmd = app.add_subcommand(
      "genes", "Repeated random column-subset normality testing");
  CsvFlags genes_csv;
  CommonFlags genes_common;
  int subset = 200;
  int repeats = 100;
  std::string genes_variant = "YY";
  std::string genes_estimator = "adaptive";
  add_csv(genes_cmd, genes_csv);
  add_common(genes_cmd, genes_common);
  genes_cmd->add_option("--subset", subset, "Columns per subset");
  genes_cmd->add_option("--repeats", repeats, "Number of repeats");
  genes_cmd->add_option("--variant", genes_variant, "Statistic variant")
      ->check(CLI::IsMember({"YY", "XX", "yy", "xx"}));
  genes_cmd->add_option("--estimator", genes_estimator,
                        "Covariance estimator: adaptive or sample")
      ->check(CLI::IsMember({"adaptive", "sample"}));

  auto* baseline_cmd =
      app.add_subcommand("baseline", "Comparison tests on one CSV dataset");
  CsvFlags baseline_csv;
  CommonFlags baseline_common;
  std::string baseline_method = "mardia";
  std::string baseline_calibration = "bootstrap";
  add_csv(baseline_cmd, baseline_csv);
  add_common(baseline_cmd, baseline_common);
  baseline_cmd->add_option("--method", baseline_method, "mardia, efr, or efr0")
      ->check(CLI::IsMember({"mardia", "efr", "efr0"}));
  baseline_cmd->add_option("--efr-calibration", baseline_calibration,
                           "eFR null: bootstrap or permutation")
      ->check(CLI::IsMember({"bootstrap", "permutation"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*test_cmd) {
      return run_test(test_csv, test_common, test_variant, test_estimator,
                      conservative, diagnostics);
    }
    if (*size_cmd) return run_experiment_cmd("size", size_flags);
    if (*power_cmd) return run_experiment_cmd("power", power_flags);
    if (*genes_cmd) {
      return run_genes(genes_csv, genes_common, subset, repeats, genes_variant,
                       genes_estimator);
    }
    if (*baseline_cmd) {
      return run_baseline(baseline_csv, baseline_common, baseline_method,
                          baseline_calibration);
    }
  } catch (const hdnt::ConfigError& e) {
    std::cerr << "error (configuration): " << e.what() << "\n";
    return 2;
  } catch (const hdnt::DataError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 3;
  } catch (const hdnt::NumericalError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

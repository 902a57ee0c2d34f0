#include "hdnt/report.hpp"

#include <json.hpp>
#include <sstream>

#include "hdnt/config.hpp"
#include "hdnt/errors.hpp"

namespace hdnt {

using OrderedJson = nlohmann::ordered_json;

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "text") return ReportFormat::text;
  throw InvalidConfig("unknown report format: " + s);
}

namespace {

const char* decision_token(bool reject) { return reject ? "REJECT" : "RETAIN"; }

OrderedJson test_report_json(const TestReport& r) {
  OrderedJson j;
  j["variant"] = to_string(r.variant);
  j["estimator"] = to_string(r.estimator);
  j["n"] = r.r_obs.n;
  j["B"] = r.B;
  j["alpha"] = r.alpha;
  j["seed"] = r.seed;
  j["r_obs"] = r.r_obs.r;
  j["r_obs_count"] = r.r_obs.count;
  j["null_mean"] = r.null_mean;
  j["p_value"] = r.p_value;
  j["p_value_conservative"] = r.p_value_conservative;
  j["reject"] = r.reject;
  j["wall_time_seconds"] = r.wall_time_seconds;
  j["null_draws"] = r.null_draws;
  return j;
}

}  // namespace

std::string emit_report(const TestReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return test_report_json(r).dump(2) + "\n";
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "draw,r_null\n";
      for (std::size_t b = 0; b < r.null_draws.size(); ++b) {
        out << (b + 1) << ',' << format_double(r.null_draws[b]) << '\n';
      }
      return out.str();
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "nearest-neighbor normality test (" << to_string(r.variant)
          << " variant, estimator " << to_string(r.estimator) << ")\n";
      out << "  n = " << r.r_obs.n << ", B = " << r.B << ", alpha = "
          << format_double(r.alpha) << ", seed = " << r.seed << "\n";
      out << "  r_obs = " << format_double(r.r_obs.r) << " (" << r.r_obs.count
          << "/" << r.r_obs.n << "), null mean = " << format_double(r.null_mean)
          << "\n";
      out << "  p-value = " << format_double(r.p_value)
          << " (conservative " << format_double(r.p_value_conservative) << ")\n";
      out << "  decision: " << decision_token(r.reject) << "\n";
      out << "  wall time: " << format_double(r.wall_time_seconds) << " s\n";
      return out.str();
    }
  }
  throw InvalidConfig("emit_report: unreachable format");
}

TestReport parse_test_report_json(const std::string& text) {
  const OrderedJson j = OrderedJson::parse(text);
  TestReport r{NnStat{}, {}, 0, 0, 0, 0, false, 0, 0, NnVariant::YY,
               Estimator::adaptive(), 0};
  r.variant = nn_variant_from_string(j.at("variant").get<std::string>());
  const std::string est = j.at("estimator").get<std::string>();
  r.estimator = est == "sample" ? Estimator::sample() : Estimator::adaptive();
  if (est.rfind("adaptive_threshold(", 0) == 0) {
    r.estimator.delta = std::stod(est.substr(19));
  }
  r.r_obs.n = j.at("n").get<int>();
  r.B = j.at("B").get<int>();
  r.alpha = j.at("alpha").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.r_obs.r = j.at("r_obs").get<double>();
  r.r_obs.count = j.at("r_obs_count").get<int>();
  r.r_obs.variant = r.variant;
  r.null_mean = j.at("null_mean").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.p_value_conservative = j.at("p_value_conservative").get<double>();
  r.reject = j.at("reject").get<bool>();
  r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  r.null_draws = j.at("null_draws").get<std::vector<double>>();
  return r;
}

std::string emit_report(const ExperimentResult& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      OrderedJson j;
      j["model"] = to_string(r.spec.cov.model);
      j["d"] = r.spec.cov.d;
      j["cov_seed"] = r.spec.cov.seed;
      j["alt"] = to_string(r.spec.alt.family);
      j["n"] = r.spec.n;
      j["method"] = to_string(r.spec.method);
      j["B"] = r.spec.B;
      j["alpha"] = r.spec.alpha;
      j["delta"] = r.spec.delta;
      j["replications"] = r.replications;
      j["seed"] = r.spec.seed;
      j["redraw_cov"] = r.spec.redraw_cov;
      j["rejection_rate"] = r.rejection_rate;
      j["wilson_ci_95"] = {r.wilson_low, r.wilson_high};
      j["total_time_seconds"] = r.total_time_seconds;
      j["per_replicate_pvalues"] = r.per_replicate_pvalues;
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "replicate,p_value,reject\n";
      for (std::size_t i = 0; i < r.per_replicate_pvalues.size(); ++i) {
        const double p = r.per_replicate_pvalues[i];
        out << (i + 1) << ',' << format_double(p) << ','
            << (p <= r.spec.alpha ? 1 : 0) << '\n';
      }
      return out.str();
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "experiment: " << to_string(r.spec.method) << " on "
          << to_string(r.spec.cov.model) << " / " << to_string(r.spec.alt.family)
          << ", n = " << r.spec.n << ", d = " << r.spec.cov.d << "\n";
      out << "  B = " << r.spec.B << ", alpha = " << format_double(r.spec.alpha)
          << ", replications = " << r.replications << ", seed = " << r.spec.seed
          << "\n";
      out << "  rejection rate = " << format_double(r.rejection_rate)
          << "  (Wilson 95%: [" << format_double(r.wilson_low) << ", "
          << format_double(r.wilson_high) << "])\n";
      out << "  total time: " << format_double(r.total_time_seconds) << " s\n";
      return out.str();
    }
  }
  throw InvalidConfig("emit_report: unreachable format");
}

std::string emit_report(const BaselineReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      OrderedJson j;
      j["method"] = to_string(r.method);
      j["statistic"] = r.statistic;
      j["p_value"] = r.p_value;
      j["alpha"] = r.alpha;
      j["reject"] = r.reject;
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "method,statistic,p_value,reject\n";
      out << to_string(r.method) << ',' << format_double(r.statistic) << ','
          << format_double(r.p_value) << ',' << (r.reject ? 1 : 0) << '\n';
      return out.str();
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "baseline test " << to_string(r.method) << ": statistic = "
          << format_double(r.statistic) << ", p-value = "
          << format_double(r.p_value) << ", alpha = " << format_double(r.alpha)
          << "\n";
      out << "  decision: " << decision_token(r.reject) << "\n";
      return out.str();
    }
  }
  throw InvalidConfig("emit_report: unreachable format");
}

std::string emit_report(const GeneProtocolResult& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      OrderedJson j;
      j["repeats"] = r.reports.size();
      j["fraction_rejected"] = r.fraction_rejected;
      OrderedJson reports = OrderedJson::array();
      for (const auto& rep : r.reports) reports.push_back(test_report_json(rep));
      j["reports"] = std::move(reports);
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "repeat,p_value,reject\n";
      for (std::size_t i = 0; i < r.reports.size(); ++i) {
        out << (i + 1) << ',' << format_double(r.reports[i].p_value) << ','
            << (r.reports[i].reject ? 1 : 0) << '\n';
      }
      return out.str();
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "gene subset protocol: " << r.reports.size() << " repeats\n";
      for (std::size_t i = 0; i < r.reports.size(); ++i) {
        out << "  repeat " << (i + 1) << ": p-value = "
            << format_double(r.reports[i].p_value) << " -> "
            << decision_token(r.reports[i].reject) << "\n";
      }
      out << "  fraction rejected: " << format_double(r.fraction_rejected) << "\n";
      return out.str();
    }
  }
  throw InvalidConfig("emit_report: unreachable format");
}

std::string manifest_text(const RunManifest& m) {
  std::ostringstream out;
  out << "# run manifest\n";
  out << "# tool = hdnt " << m.version << "\n";
  out << "# subcommand = " << m.subcommand << "\n";
  out << "# master_seed = " << m.master_seed << "\n";
  out << "# started_at = " << m.started_at << "\n";
  out << "# finished_at = " << m.finished_at << "\n";
  for (const auto& [key, value] : m.flags) {
    out << key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace hdnt

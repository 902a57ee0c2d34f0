#ifndef HDNT_REPORT_HPP
#define HDNT_REPORT_HPP

#include <string>

#include "hdnt/baselines.hpp"
#include "hdnt/genes.hpp"
#include "hdnt/normtest.hpp"
#include "hdnt/simlab.hpp"

namespace hdnt {

enum class ReportFormat { json, csv, text };

ReportFormat report_format_from_string(const std::string& s);

/// Serializes a report in one of three shapes:
///  - json: one object, keys in a fixed documented order;
///  - csv: header plus one row per null draw / replicate;
///  - text: human-readable summary carrying the decision token
///    (`REJECT` / `RETAIN`), p-value, and seed.
std::string emit_report(const TestReport& report, ReportFormat format);
std::string emit_report(const ExperimentResult& result, ReportFormat format);
std::string emit_report(const BaselineReport& report, ReportFormat format);
std::string emit_report(const GeneProtocolResult& result, ReportFormat format);

/// Inverse of the JSON emitter for TestReport, used for round-trip checks
/// and downstream tooling.
TestReport parse_test_report_json(const std::string& text);

/// Everything needed to rerun a CLI invocation: subcommand, resolved
/// flags, master seed, tool version, wall-clock bounds. Printed to stderr
/// at the end of every run; the flag set (minus timestamps) is what the
/// `--save-config` option persists.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> flags;
  std::uint64_t master_seed = 0;
  std::string version;
  std::string started_at;
  std::string finished_at;
};

std::string manifest_text(const RunManifest& manifest);

}  // namespace hdnt

#endif  // HDNT_REPORT_HPP

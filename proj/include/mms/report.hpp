// Experiment reports: per-cell rows with verdicts, deterministic CSV and
// JSON serialization.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace mms {

enum class Verdict { holds, fails, excluded_near_breakpoint, indeterminate };

std::string verdict_name(Verdict v);

struct ReportRow {
  std::string scenario;
  int n = 0;
  double kappa = 0.0;
  double delta = 0.0;
  std::string variant;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  Verdict verdict = Verdict::holds;
  std::string witness;
};

// Rows are sorted by (scenario, n, kappa, delta, variant, witness) before
// serialization; numbers print with a fixed format, so equal configs give
// byte-identical outputs.
struct ExperimentReport {
  nlohmann::json config;
  std::vector<ReportRow> rows;

  void sort_rows();
  std::map<std::string, int> verdict_counts() const;
  std::string to_csv() const;
  nlohmann::json to_json() const;
  // 0 when every verdict is holds/excluded/indeterminate, 1 otherwise.
  int exit_code() const;
};

std::string format_number(double v);

}  // namespace mms

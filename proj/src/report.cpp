#include "mms/report.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace mms {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::excluded_near_breakpoint:
      return "excluded-near-breakpoint";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void ExperimentReport::sort_rows() {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a,
                                         const ReportRow& b) {
    return std::tie(a.scenario, a.n, a.kappa, a.delta, a.variant, a.witness) <
           std::tie(b.scenario, b.n, b.kappa, b.delta, b.variant, b.witness);
  });
}

std::map<std::string, int> ExperimentReport::verdict_counts() const {
  std::map<std::string, int> counts;
  for (const auto& r : rows) ++counts[verdict_name(r.verdict)];
  return counts;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::string out =
      "scenario,n,kappa,delta,variant,value,lower,upper,verdict,witness\n";
  for (const auto& r : rows) {
    out += csv_field(r.scenario) + ',' + std::to_string(r.n) + ',' +
           format_number(r.kappa) + ',' + format_number(r.delta) + ',' +
           r.variant + ',' + format_number(r.value) + ',' +
           format_number(r.lower) + ',' + format_number(r.upper) + ',' +
           verdict_name(r.verdict) + ',' + csv_field(r.witness) + '\n';
  }
  return out;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"scenario", r.scenario},
                         {"n", r.n},
                         {"kappa", r.kappa},
                         {"delta", r.delta},
                         {"variant", r.variant},
                         {"value", r.value},
                         {"lower", r.lower},
                         {"upper", r.upper},
                         {"verdict", verdict_name(r.verdict)},
                         {"witness", r.witness}});
  }
  return {{"config", config},
          {"rows", rows_json},
          {"summary", verdict_counts()}};
}

int ExperimentReport::exit_code() const {
  for (const auto& r : rows)
    if (r.verdict == Verdict::fails) return 1;
  return 0;
}

}  // namespace mms

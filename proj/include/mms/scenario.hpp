// Named experiment drivers and their configuration.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mms/report.hpp"

namespace mms {

struct ScenarioConfig {
  std::string scenario;
  int m = 10;                          // grid points / atoms
  int k = 10;                          // screen truncation
  std::vector<int> n_list{1, 2, 4, 8}; // scale indices
  double R = 4.0;                      // range radius
  double h = 0.25;                     // mesh
  std::vector<double> kappa_grid{0.25};
  std::vector<double> delta_schedule{0.1, 0.01, 0.001};
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string csv_path;
  std::string json_path;
};

// Reads a config JSON (fields as above; all optional except scenario).
// Throws std::invalid_argument on malformed values.
ScenarioConfig parse_scenario_config(const nlohmann::json& j);
nlohmann::json scenario_config_to_json(const ScenarioConfig& c);

// Runs "countable-screen", "ray-scale", or "finite-cat0". Cells run in a
// work pool sized by the MMS_WORKERS environment variable (default 1);
// rows are sorted before serialization, so output is schedule
// independent. Writes CSV/JSON when paths are set.
ExperimentReport run_scenario(const ScenarioConfig& config);

}  // namespace mms

// Command-line front end: validate space files, compute single
// invariants, and run named experiment scenarios.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mms/couplings.hpp"
#include "mms/metrics.hpp"
#include "mms/obsdiam.hpp"
#include "mms/scenario.hpp"
#include "mms/space.hpp"

namespace {

mms::FiniteMMSpace as_mm(const mms::SpaceFile& file) {
  if (file.mu)
    return mms::FiniteMMSpace(file.space, *file.mu);
  return mms::FiniteMMSpace(file.space,
                            mms::ProbabilityWeights::uniform(file.space.size()));
}

int run(int argc, char** argv) {
  CLI::App app{"Metric-measure invariants: observable diameters, "
               "Prokhorov/box/GH distances, and experiment scenarios"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand("validate", "check a space file");
  std::string v_space;
  validate->add_option("--space", v_space, "space JSON file")->required();

  // compute
  auto* compute = app.add_subcommand("compute", "one invariant, one instance");
  std::string c_space, c_screen, c_invariant = "auto", c_variant = "plain";
  double c_kappa = 0.25, c_delta = 0.0, c_range = 0.0;
  compute->add_option("--space", c_space, "source space JSON")->required();
  compute->add_option("--screen", c_screen, "screen / second space JSON");
  compute->add_option("--invariant", c_invariant,
                      "partial-diameter | obsdiam | prokhorov | box | gh "
                      "(default: obsdiam with a screen, else partial-diameter)");
  compute->add_option("--kappa", c_kappa, "mass parameter in (0,1)");
  compute->add_option("--delta", c_delta, "error parameter");
  compute->add_option("--variant", c_variant, "plain | delta | tilde_delta");
  compute->add_option("--range", c_range,
                      "restrict maps to the open ball of this radius "
                      "around the screen basepoint");

  // scenario
  auto* scenario = app.add_subcommand("scenario", "run a named experiment");
  std::string s_name, s_config, s_csv, s_json;
  scenario->add_option("--name", s_name, "scenario name");
  scenario->add_option("--config", s_config, "config JSON file");
  scenario->add_option("--csv", s_csv, "CSV output path");
  scenario->add_option("--json", s_json, "JSON output path");

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    // parse leniently so axiom violations report as a failed check (exit
    // 1) rather than an I/O error (exit 2)
    std::ifstream in(v_space);
    if (!in) throw std::runtime_error("cannot open " + v_space);
    nlohmann::json j;
    in >> j;
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto dist =
        j.at("dist").get<std::vector<std::vector<double>>>();
    const mms::ValidationReport rep = mms::validate(labels, dist);
    std::cout << (rep.ok ? "pass" : "fail: " + rep.message) << '\n';
    return rep.ok ? 0 : 1;
  }

  if (*compute) {
    const mms::SpaceFile sf = mms::load_space_file(c_space);
    std::optional<mms::SpaceFile> tf;
    if (!c_screen.empty()) tf = mms::load_space_file(c_screen);
    std::string what = c_invariant;
    if (what == "auto") what = tf ? "obsdiam" : "partial-diameter";
    nlohmann::json out{{"invariant", what}};

    if (what == "partial-diameter") {
      out["kappa"] = c_kappa;
      out["value"] =
          mms::partial_diameter(sf.space, as_mm(sf).mu(), c_kappa);
    } else if (what == "obsdiam") {
      if (!tf) throw std::invalid_argument("obsdiam needs --screen");
      mms::Variant variant = mms::Variant::plain;
      if (c_variant == "delta")
        variant = mms::Variant::delta;
      else if (c_variant == "tilde_delta")
        variant = mms::Variant::tilde_delta;
      else if (c_variant != "plain")
        throw std::invalid_argument("unknown variant " + c_variant);
      std::optional<mms::RangeRestriction> range;
      if (c_range > 0.0)
        range = mms::RangeRestriction{tf->basepoint.value_or(0), c_range};
      const mms::ObsDiamResult r = mms::obsdiam(
          as_mm(sf), tf->space, c_kappa, c_delta, variant, range);
      out["kappa"] = c_kappa;
      out["delta"] = c_delta;
      out["variant"] = c_variant;
      out["value"] = r.value;
      out["witness"] = r.witness;
    } else if (what == "prokhorov") {
      if (!tf) throw std::invalid_argument("prokhorov needs --screen");
      // both files must describe measures on the same point set
      out["value"] =
          mms::prokhorov(sf.space, as_mm(sf).mu(), as_mm(*tf).mu());
    } else if (what == "box") {
      if (!tf) throw std::invalid_argument("box needs --screen");
      out["value"] = mms::box_distance_exact(as_mm(sf), as_mm(*tf));
    } else if (what == "gh") {
      if (!tf) throw std::invalid_argument("gh needs --screen");
      out["value"] = mms::gh_distance(sf.space, tf->space);
    } else {
      throw std::invalid_argument("unknown invariant " + what);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  // scenario
  nlohmann::json cfg = nlohmann::json::object();
  if (!s_config.empty()) {
    std::ifstream in(s_config);
    if (!in) throw std::runtime_error("cannot read " + s_config);
    in >> cfg;
  }
  if (!s_name.empty()) cfg["scenario"] = s_name;
  if (!s_csv.empty()) cfg["csv"] = s_csv;
  if (!s_json.empty()) cfg["json"] = s_json;
  const mms::ScenarioConfig config = mms::parse_scenario_config(cfg);
  const mms::ExperimentReport report = mms::run_scenario(config);
  for (const auto& [verdict, count] : report.verdict_counts())
    std::cout << verdict << ": " << count << '\n';
  if (config.csv_path.empty()) std::cout << report.to_csv();
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

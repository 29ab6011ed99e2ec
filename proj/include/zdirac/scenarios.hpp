#pragma once

// Registered scenarios: each builds its models, runs every oracle that applies
// and collects the sampled fields, normalized densities and check reports.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zdirac/verify.hpp"

namespace zdirac {

struct GridSpec {
  double xmin = -8.0;
  double xmax = 8.0;
  int npoints = 801;
};

struct ScenarioConfig {
  std::string scenario;
  GridSpec grid;
  int jet_order = 4;
  int delta = -1;
  std::string m_hat_expr = "0";
  std::string vhat22_expr = "0";
  std::string vhat12_expr = "0";
  std::string vhat21_expr = "0";
  std::vector<double> k_y;
  double tolerance = 1e-8;
  std::string output = "out";

  // ConfigError unless npoints >= 3, xmin < xmax, delta = +-1, the jet order
  // is in [2, 8], the tolerance is positive and every expression parses.
  void validate() const;
};

// All registered names, in the order `list` prints them.
const std::vector<std::string>& scenario_names();
std::string_view scenario_summary(std::string_view name);
// Defaults for a registered scenario; ConfigError for an unknown name.
ScenarioConfig default_config(std::string_view name);

// Overlay the keys present in `j` (ScenarioConfig field names) onto `base`.
ScenarioConfig config_from_json(const nlohmann::ordered_json& j, ScenarioConfig base);
nlohmann::ordered_json config_to_json(const ScenarioConfig& c);

struct SampledField {
  std::string name;
  std::vector<Complex> values;  // NaN where the field cannot be evaluated
  bool complex = false;
};

struct SampledDensity {
  std::string name;
  std::vector<double> values;  // normalized over the grid
};

struct ScenarioResult {
  ScenarioConfig config;
  std::string abscissa = "x";
  std::vector<double> grid;
  std::vector<SampledField> fields;
  std::vector<double> density_grid;
  std::vector<SampledDensity> densities;
  std::vector<CheckReport> reports;
  std::string provenance;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

// Runs one scenario (not verify-all). Check failures are reported, not thrown;
// ConfigError escapes for bad configurations.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Engine-level property checks that do not belong to one scenario.
std::vector<CheckReport> engine_checks();

bool has_failures(const std::vector<CheckReport>& reports);

// Names of the checks that verify-all logs as known discrepancies, in report
// order. The README lists the same entries.
const std::vector<std::string>& documented_discrepancies();

}  // namespace zdirac

#pragma once

// Files written for a scenario run: fields.csv, densities.csv, report.json
// and meta.json. JSON goes through a small emitter of our own so that every
// float carries 17 significant digits and key order is exactly as inserted.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "zdirac/scenarios.hpp"

namespace zdirac {

// %.17g; "null" for NaN and infinities.
std::string format_double(double v);

// Two-space indented JSON with %.17g floats.
std::string dump_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json complex_to_json(Complex z);
nlohmann::ordered_json report_to_json(const CheckReport& r);
nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& reports);

std::string fields_csv(const ScenarioResult& r);
std::string densities_csv(const ScenarioResult& r);
nlohmann::ordered_json meta_json(const ScenarioResult& r);

// Writes the four files into `dir`, creating it.
void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir);

// Every scenario with its defaults, each written to dir/<name>, then the
// engine checks. Report names carry a "<scenario>: " prefix. The combined
// report.json and meta.json go into `dir`. Returns the combined reports.
std::vector<CheckReport> run_verify_all(const std::filesystem::path& dir);

}  // namespace zdirac

// zdirac: run the shipped scenarios and write their data and check reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zdirac/output.hpp"

namespace {

using namespace zdirac;

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

// "a:b:n"
GridSpec parse_grid(const std::string& text) {
  std::istringstream is(text);
  GridSpec g;
  char c1 = 0, c2 = 0;
  if (!(is >> g.xmin >> c1 >> g.xmax >> c2 >> g.npoints) || c1 != ':' || c2 != ':' || !is.eof())
    throw Error(ErrorKind::ConfigError, "grid must look like a:b:n, got '" + text + "'");
  return g;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config file " + path);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, path + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

int summarize(const std::vector<CheckReport>& reports, const std::string& where) {
  int pass = 0, fail = 0, logged = 0;
  for (const auto& r : reports) {
    if (r.status == Status::Pass) ++pass;
    if (r.status == Status::Fail) ++fail;
    if (r.status == Status::MismatchLogged) ++logged;
  }
  for (const auto& r : reports)
    if (r.status == Status::Fail)
      std::cerr << "fail: " << r.name << " (max_err " << format_double(r.max_err) << ") " << r.notes << "\n";
  std::cout << pass << " pass, " << fail << " fail, " << logged << " mismatch-logged; output in " << where << "\n";
  return fail ? kExitFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Darboux-transformed Dirac systems at zero energy"};
  app.require_subcommand(1);

  std::string scenario, config_file, grid, m_hat, out_dir, verify_out = "out/verify-all";
  int jet_order = 0, delta = 0;
  double tol = 0.0;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario, "Scenario name (see `list`)")->required();
  run->add_option("--config", config_file, "JSON file with ScenarioConfig keys");
  run->add_option("--grid", grid, "Grid as xmin:xmax:npoints");
  run->add_option("--jet-order", jet_order, "Jet order used for derivative checks");
  run->add_option("--delta", delta, "Sign of the transformed potential, +1 or -1");
  run->add_option("--m-hat", m_hat, "Transformed mass as an expression in x");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--tol", tol, "Residual tolerance");

  auto* list = app.add_subcommand("list", "List scenarios");
  auto* verify = app.add_subcommand("verify-all", "Run every scenario and the engine checks");
  verify->add_option("--out", verify_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& name : scenario_names()) std::cout << name << "  " << scenario_summary(name) << "\n";
      return 0;
    }
    if (*verify || (*run && scenario == "verify-all")) {
      const std::string dir = *run && !out_dir.empty() ? out_dir : verify_out;
      return summarize(run_verify_all(dir), dir);
    }
    ScenarioConfig c = default_config(scenario);
    if (!config_file.empty()) c = load_config_file(config_file, c);
    if (c.scenario != scenario)
      throw Error(ErrorKind::ConfigError, "config names scenario '" + c.scenario + "', not '" + scenario + "'");
    if (!grid.empty()) c.grid = parse_grid(grid);
    if (run->count("--jet-order")) c.jet_order = jet_order;
    if (run->count("--delta")) c.delta = delta;
    if (run->count("--m-hat")) c.m_hat_expr = m_hat;
    if (run->count("--tol")) c.tolerance = tol;
    if (!out_dir.empty()) c.output = out_dir;
    c.validate();
    const ScenarioResult r = run_scenario(c);
    write_outputs(r, c.output);
    return summarize(r.reports, c.output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

#include "zdirac/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zdirac {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit_string(std::string& out, const std::string& s) {
  // nlohmann's own escaping for strings.
  out += ordered_json(s).dump();
}

void emit(std::string& out, const ordered_json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit_string(out, k);
        out += ": ";
        emit(out, v, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of numbers (complex pairs, k_y lists) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_number(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(out, j[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(out, j[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case ordered_json::value_t::string:
      emit_string(out, j.get<std::string>());
      return;
    default:
      out += j.dump();
      return;
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(ErrorKind::ConfigError, "cannot write " + p.string());
  os << text;
  if (!os) throw Error(ErrorKind::ConfigError, "cannot write " + p.string());
}

std::string csv_cell(double v) {
  return std::isfinite(v) ? format_double(v) : std::string("nan");
}

}  // namespace

std::string dump_json(const ordered_json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

ordered_json complex_to_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json report_to_json(const CheckReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["status"] = std::string(to_string(r.status));
  j["max_err"] = r.max_err;
  j["location"] = r.location;
  j["notes"] = r.notes;
  return j;
}

ordered_json reports_to_json(const std::vector<CheckReport>& reports) {
  ordered_json a = ordered_json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return a;
}

std::string fields_csv(const ScenarioResult& r) {
  std::string out = r.abscissa;
  for (const auto& f : r.fields) out += f.complex ? "," + f.name + ".re," + f.name + ".im" : "," + f.name;
  out += "\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out += csv_cell(r.grid[i]);
    for (const auto& f : r.fields) {
      out += "," + csv_cell(f.values[i].real());
      if (f.complex) out += "," + csv_cell(f.values[i].imag());
    }
    out += "\n";
  }
  return out;
}

std::string densities_csv(const ScenarioResult& r) {
  std::string out = "x";
  for (const auto& d : r.densities) out += "," + d.name;
  out += "\n";
  if (r.densities.empty()) return out;
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out += csv_cell(r.grid[i]);
    for (const auto& d : r.densities) out += "," + csv_cell(d.values[i]);
    out += "\n";
  }
  return out;
}

ordered_json meta_json(const ScenarioResult& r) {
  ordered_json j;
  j["tool"] = "zdirac";
  j["scenario"] = r.config.scenario;
  j["summary"] = std::string(scenario_summary(r.config.scenario));
  j["config"] = config_to_json(r.config);
  j["provenance"] = r.provenance;
  j["fields"] = ordered_json::array();
  for (const auto& f : r.fields) j["fields"].push_back(f.name);
  j["densities"] = ordered_json::array();
  for (const auto& d : r.densities) j["densities"].push_back(d.name);
  j["extra"] = r.extra;
  return j;
}

void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "fields.csv", fields_csv(r));
  write_file(dir / "densities.csv", densities_csv(r));
  write_file(dir / "report.json", dump_json(reports_to_json(r.reports)));
  write_file(dir / "meta.json", dump_json(meta_json(r)));
}

std::vector<CheckReport> run_verify_all(const std::filesystem::path& dir) {
  std::vector<CheckReport> all;
  ordered_json runs = ordered_json::array();
  for (const auto& name : scenario_names()) {
    if (name == "verify-all") continue;
    ScenarioConfig c = default_config(name);
    c.output = (dir / name).string();
    ScenarioResult r = run_scenario(c);
    write_outputs(r, dir / name);
    int fails = 0, logged = 0;
    for (auto rep : r.reports) {
      fails += rep.status == Status::Fail;
      logged += rep.status == Status::MismatchLogged;
      rep.name = name + ": " + rep.name;
      all.push_back(std::move(rep));
    }
    runs.push_back({{"scenario", name}, {"checks", r.reports.size()}, {"fail", fails}, {"mismatch_logged", logged}});
  }
  for (auto rep : engine_checks()) {
    rep.name = "engine: " + rep.name;
    all.push_back(std::move(rep));
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "report.json", dump_json(reports_to_json(all)));
  ordered_json meta;
  meta["tool"] = "zdirac";
  meta["scenario"] = "verify-all";
  meta["summary"] = std::string(scenario_summary("verify-all"));
  meta["runs"] = runs;
  meta["documented_discrepancies"] = documented_discrepancies();
  write_file(dir / "meta.json", dump_json(meta));
  return all;
}

}  // namespace zdirac

// Copyright 2026 The wgqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wgqed/config.hpp"

#include "wgqed/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace wgqed {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(path + "/" + key, "unknown field");
  }
}

double number(const json& obj, const std::string& path, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "/" + key, "required field missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "/" + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + "/" + key, "must be finite");
  return x;
}

int integer(const json& obj, const std::string& path, const std::string& key,
            std::optional<int> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "/" + key, "required field missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string text(const json& obj, const std::string& path, const std::string& key,
                 std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "/" + key, "required field missing");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

GridSpec parse_grid(const json& v, const std::string& path) {
  check_keys(v, path, {"values", "linear", "log"});
  if (v.size() != 1) throw ConfigError(path, "exactly one of values, linear, log");
  GridSpec g;
  if (v.contains("values")) {
    g = GridSpec::of(numbers(v["values"], path + "/values"));
  } else {
    const bool lin = v.contains("linear");
    const std::string p = path + (lin ? "/linear" : "/log");
    const json& r = v.at(lin ? "linear" : "log");
    check_keys(r, p, {"from", "to", "count"});
    const double a = number(r, p, "from");
    const double b = number(r, p, "to");
    const int n = integer(r, p, "count");
    if (n < 1) throw ConfigError(p + "/count", "must be >= 1");
    if (!lin && (a <= 0.0 || b <= 0.0)) throw ConfigError(p, "log grid endpoints must be > 0");
    g = lin ? GridSpec::linear(a, b, n) : GridSpec::log(a, b, n);
  }
  if (g.resolve().empty()) throw ConfigError(path, "grid is empty");
  return g;
}

json grid_json(const GridSpec& g) {
  switch (g.kind) {
    case GridSpec::Kind::values: return {{"values", g.list}};
    case GridSpec::Kind::linear: return {{"linear", {{"from", g.from}, {"to", g.to}, {"count", g.count}}}};
    case GridSpec::Kind::log: return {{"log", {{"from", g.from}, {"to", g.to}, {"count", g.count}}}};
  }
  return {};
}

DephasingProfile parse_profile(const std::string& s, const std::string& path) {
  if (s == "uniform") return DephasingProfile::uniform;
  if (s == "quadratic") return DephasingProfile::quadratic;
  throw ConfigError(path, "expected uniform or quadratic");
}

std::string profile_name(DephasingProfile p) {
  return p == DephasingProfile::uniform ? "uniform" : "quadratic";
}

ProbeReference parse_reference(const std::string& s, const std::string& path) {
  if (s == "absolute") return ProbeReference::absolute;
  if (s == "omega10") return ProbeReference::omega10;
  if (s == "omega_d") return ProbeReference::omega_d;
  throw ConfigError(path, "expected absolute, omega10 or omega_d");
}

DriveConfig parse_drive(const json& v, const std::string& path) {
  DriveConfig d;
  const bool order = v.contains("pump_order");
  const bool freq = v.contains("omega_d");
  if (order == freq) throw ConfigError(path, "give exactly one of pump_order, omega_d");
  if (order) {
    d.pump_order = integer(v, path, "pump_order");
    if (*d.pump_order < 1) throw ConfigError(path + "/pump_order", "must be >= 1");
  } else {
    d.omega_d = number(v, path, "omega_d");
    if (d.omega_d <= 0.0) throw ConfigError(path + "/omega_d", "must be > 0");
  }
  return d;
}

json drive_json(const DriveConfig& d) {
  if (d.pump_order) return {{"pump_order", *d.pump_order}};
  return {{"omega_d", d.omega_d}};
}

}  // namespace

std::vector<double> GridSpec::resolve() const {
  switch (kind) {
    case Kind::values: return list;
    case Kind::linear: return linspace(from, to, count);
    case Kind::log: return logspace(from, to, count);
  }
  return list;
}

GridSpec GridSpec::of(std::vector<double> v) {
  GridSpec g;
  g.list = std::move(v);
  return g;
}

GridSpec GridSpec::linear(double a, double b, int n) {
  GridSpec g;
  g.kind = Kind::linear;
  g.from = a;
  g.to = b;
  g.count = n;
  return g;
}

GridSpec GridSpec::log(double a, double b, int n) {
  GridSpec g = linear(a, b, n);
  g.kind = Kind::log;
  return g;
}

std::string to_string(RunKind k) {
  switch (k) {
    case RunKind::spectrum: return "spectrum";
    case RunKind::linecut: return "linecut";
    case RunKind::branch: return "branch";
    case RunKind::dephasing: return "dephasing";
  }
  return "spectrum";
}

std::string to_string(ProbeReference r) {
  switch (r) {
    case ProbeReference::absolute: return "absolute";
    case ProbeReference::omega10: return "omega10";
    case ProbeReference::omega_d: return "omega_d";
  }
  return "absolute";
}

double DriveConfig::resolve(const TransmonSpec& t) const {
  if (pump_order) return DriveSpec::k_photon(t, *pump_order, 0.0).omega_d;
  return omega_d;
}

ArraySpec RunConfig::array() const {
  ArraySpec a;
  for (double x : positions) {
    TransmonSpec t = transmon;
    t.position = x;
    if (dephasing_rate != 0.0) t.dephasing = wgqed::dephasing_rates(t.levels, dephasing_rate, dephasing_profile);
    a.transmons.push_back(std::move(t));
  }
  return a;
}

DriveSpec RunConfig::drive_spec(double power) const {
  DriveSpec d;
  d.omega_d = drive.resolve(transmon);
  d.rabi = std::sqrt(power);
  d.pump_order = drive.pump_order.value_or(1);
  return d;
}

double RunConfig::probe_frequency(ProbeReference ref, double offset, double omega_d) const {
  switch (ref) {
    case ProbeReference::absolute: return offset;
    case ProbeReference::omega10: return transmon.omega10 + offset;
    case ProbeReference::omega_d: return omega_d + offset;
  }
  return offset;
}

std::vector<double> RunConfig::omega_p_values() const {
  std::vector<double> v = probe.resolve();
  const double wd = drive.resolve(transmon);
  for (double& x : v) x = probe_frequency(probe_reference, x, wd);
  return v;
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "", {"schema_version", "name", "kind", "system", "drive", "drive_powers",
                       "probe", "model", "threshold", "diagnostics", "branch", "dephasing_scan",
                       "oracle", "workers", "output"});
  RunConfig c;
  c.schema_version = integer(doc, "", "schema_version");
  if (c.schema_version != kSchemaVersion)
    throw ConfigError("/schema_version", "unsupported version " + std::to_string(c.schema_version));
  c.name = text(doc, "", "name", std::string("run"));

  const std::string kind = text(doc, "", "kind");
  if (kind == "spectrum") c.kind = RunKind::spectrum;
  else if (kind == "linecut") c.kind = RunKind::linecut;
  else if (kind == "branch") c.kind = RunKind::branch;
  else if (kind == "dephasing") c.kind = RunKind::dephasing;
  else throw ConfigError("/kind", "expected spectrum, linecut, branch or dephasing");

  if (!doc.contains("system")) throw ConfigError("/system", "required field missing");
  const json& sys = doc["system"];
  check_keys(sys, "/system", {"levels", "omega10", "anharmonicity", "gamma10", "positions",
                              "bare_decay", "dephasing"});
  c.transmon.levels = integer(sys, "/system", "levels", 6);
  c.transmon.omega10 = number(sys, "/system", "omega10", 2100.0);
  c.transmon.anharmonicity = number(sys, "/system", "anharmonicity", 100.0);
  c.transmon.gamma10 = number(sys, "/system", "gamma10", 1.0);
  if (c.transmon.levels < 2) throw ConfigError("/system/levels", "must be >= 2");
  if (c.transmon.gamma10 <= 0.0) throw ConfigError("/system/gamma10", "must be > 0");
  if (sys.contains("positions")) {
    c.positions = numbers(sys["positions"], "/system/positions");
    if (c.positions.empty()) throw ConfigError("/system/positions", "need at least one atom");
  }
  if (sys.contains("bare_decay")) {
    c.transmon.bare_decay = numbers(sys["bare_decay"], "/system/bare_decay");
    if (static_cast<int>(c.transmon.bare_decay.size()) != c.transmon.levels - 1)
      throw ConfigError("/system/bare_decay", "needs levels - 1 entries");
  }
  if (sys.contains("dephasing")) {
    const json& d = sys["dephasing"];
    check_keys(d, "/system/dephasing", {"rate", "profile"});
    c.dephasing_rate = number(d, "/system/dephasing", "rate", 0.0);
    if (c.dephasing_rate < 0.0) throw ConfigError("/system/dephasing/rate", "must be >= 0");
    c.dephasing_profile =
        parse_profile(text(d, "/system/dephasing", "profile", std::string("quadratic")),
                      "/system/dephasing/profile");
  }
  try {
    c.array().validate();
  } catch (const Error& e) {
    throw ConfigError("/system", e.what());
  }

  if (!doc.contains("drive")) throw ConfigError("/drive", "required field missing");
  check_keys(doc["drive"], "/drive", {"pump_order", "omega_d"});
  c.drive = parse_drive(doc["drive"], "/drive");

  c.model = Model::full;
  if (doc.contains("model")) {
    try {
      c.model = model_from_string(text(doc, "", "model"));
    } catch (const InvalidSpec&) {
      throw ConfigError("/model", "expected full, reduced, decoupled, single or oracle");
    }
  }
  c.threshold = number(doc, "", "threshold", kDefaultSidebandThreshold);
  if (c.threshold < 0.0) throw ConfigError("/threshold", "must be >= 0");
  if (doc.contains("diagnostics")) {
    if (!doc["diagnostics"].is_boolean()) throw ConfigError("/diagnostics", "expected a boolean");
    c.diagnostics = doc["diagnostics"].get<bool>();
  }
  c.workers = integer(doc, "", "workers", 1);
  if (c.workers < 1) throw ConfigError("/workers", "must be >= 1");
  if (doc.contains("output")) {
    check_keys(doc["output"], "/output", {"directory"});
    c.output_dir = text(doc["output"], "/output", "directory", std::string("out"));
  }
  if (doc.contains("oracle")) {
    check_keys(doc["oracle"], "/oracle", {"probe_rabi"});
    c.oracle_probe_rabi = number(doc["oracle"], "/oracle", "probe_rabi", 1e-3);
    if (c.oracle_probe_rabi <= 0.0) throw ConfigError("/oracle/probe_rabi", "must be > 0");
  }

  const bool needs_grid = c.kind != RunKind::dephasing;
  if (needs_grid) {
    if (!doc.contains("drive_powers")) throw ConfigError("/drive_powers", "required field missing");
    c.drive_powers = parse_grid(doc["drive_powers"], "/drive_powers");
    for (double p : c.drive_powers.resolve())
      if (p < 0.0) throw ConfigError("/drive_powers", "powers must be >= 0");
    if (c.kind == RunKind::linecut && c.drive_powers.resolve().size() != 1)
      throw ConfigError("/drive_powers", "a line cut takes exactly one drive power");
  }
  if (c.kind == RunKind::spectrum || c.kind == RunKind::linecut) {
    if (!doc.contains("probe")) throw ConfigError("/probe", "required field missing");
    const json& p = doc["probe"];
    check_keys(p, "/probe", {"reference", "grid"});
    c.probe_reference = parse_reference(text(p, "/probe", "reference", std::string("omega10")),
                                        "/probe/reference");
    if (!p.contains("grid")) throw ConfigError("/probe/grid", "required field missing");
    c.probe = parse_grid(p["grid"], "/probe/grid");
    for (double w : c.omega_p_values())
      if (!(w > 0.0)) throw ConfigError("/probe", "probe frequencies must be > 0");
  }
  if (c.kind == RunKind::branch) {
    if (!doc.contains("branch")) throw ConfigError("/branch", "required field missing");
    check_keys(doc["branch"], "/branch", {"mu", "nu"});
    c.branch_mu = integer(doc["branch"], "/branch", "mu");
    c.branch_nu = integer(doc["branch"], "/branch", "nu");
    int dim = 1;
    for (std::size_t n = 0; n < c.positions.size(); ++n) dim *= c.transmon.levels;
    if (c.branch_mu < 0 || c.branch_mu >= dim) throw ConfigError("/branch/mu", "out of range");
    if (c.branch_nu < 0 || c.branch_nu >= dim) throw ConfigError("/branch/nu", "out of range");
    if (c.branch_mu == c.branch_nu) throw ConfigError("/branch", "mu and nu must differ");
  }
  if (c.kind == RunKind::dephasing) {
    if (!doc.contains("dephasing_scan")) throw ConfigError("/dephasing_scan", "required field missing");
    const json& s = doc["dephasing_scan"];
    const std::string p = "/dephasing_scan";
    check_keys(s, p, {"rates", "profile", "points"});
    if (!s.contains("rates")) throw ConfigError(p + "/rates", "required field missing");
    c.dephasing_rates = parse_grid(s["rates"], p + "/rates");
    for (double g : c.dephasing_rates.resolve())
      if (g < 0.0) throw ConfigError(p + "/rates", "rates must be >= 0");
    c.scan_profile = parse_profile(text(s, p, "profile", std::string("quadratic")), p + "/profile");
    if (!s.contains("points") || !s["points"].is_array() || s["points"].empty())
      throw ConfigError(p + "/points", "need a nonempty array");
    for (std::size_t i = 0; i < s["points"].size(); ++i) {
      const std::string q = p + "/points/" + std::to_string(i);
      const json& e = s["points"][i];
      check_keys(e, q, {"label", "pump_order", "omega_d", "drive_power", "reference", "probe_offset"});
      DephasingPointConfig d;
      d.label = text(e, q, "label", "point" + std::to_string(i));
      json drv = json::object();
      if (e.contains("pump_order")) drv["pump_order"] = e["pump_order"];
      if (e.contains("omega_d")) drv["omega_d"] = e["omega_d"];
      d.drive = parse_drive(drv, q);
      d.drive_power = number(e, q, "drive_power");
      if (d.drive_power < 0.0) throw ConfigError(q + "/drive_power", "must be >= 0");
      d.reference = parse_reference(text(e, q, "reference", std::string("omega10")), q + "/reference");
      d.probe_offset = number(e, q, "probe_offset");
      c.dephasing_points.push_back(std::move(d));
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c, bool runtime) {
  json sys = {{"levels", c.transmon.levels},
              {"omega10", c.transmon.omega10},
              {"anharmonicity", c.transmon.anharmonicity},
              {"gamma10", c.transmon.gamma10},
              {"positions", c.positions},
              {"dephasing", {{"rate", c.dephasing_rate}, {"profile", profile_name(c.dephasing_profile)}}}};
  if (!c.transmon.bare_decay.empty()) sys["bare_decay"] = c.transmon.bare_decay;
  json doc = {{"schema_version", c.schema_version},
              {"name", c.name},
              {"kind", to_string(c.kind)},
              {"system", sys},
              {"drive", drive_json(c.drive)},
              {"model", to_string(c.model)},
              {"threshold", c.threshold},
              {"diagnostics", c.diagnostics}};
  if (c.kind != RunKind::dephasing) doc["drive_powers"] = grid_json(c.drive_powers);
  if (c.kind == RunKind::spectrum || c.kind == RunKind::linecut)
    doc["probe"] = {{"reference", to_string(c.probe_reference)}, {"grid", grid_json(c.probe)}};
  if (c.kind == RunKind::branch) doc["branch"] = {{"mu", c.branch_mu}, {"nu", c.branch_nu}};
  if (c.kind == RunKind::dephasing) {
    json pts = json::array();
    for (const auto& p : c.dephasing_points) {
      json e = drive_json(p.drive);
      e["label"] = p.label;
      e["drive_power"] = p.drive_power;
      e["reference"] = to_string(p.reference);
      e["probe_offset"] = p.probe_offset;
      pts.push_back(e);
    }
    doc["dephasing_scan"] = {{"rates", grid_json(c.dephasing_rates)},
                             {"profile", profile_name(c.scan_profile)},
                             {"points", pts}};
  }
  if (c.model == Model::oracle) doc["oracle"] = {{"probe_rabi", c.oracle_probe_rabi}};
  if (runtime) {
    doc["workers"] = c.workers;
    doc["output"] = {{"directory", c.output_dir}};
  }
  return doc;
}

}  // namespace wgqed

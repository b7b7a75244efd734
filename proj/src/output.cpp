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

#include "wgqed/output.hpp"

#include "wgqed/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace wgqed {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

json point_json(const SpectrumPoint& p) {
  json e = {{"drive_power", p.drive_power},
            {"omega_p", p.omega_p},
            {"r", number_or_null(p.r)},
            {"flags", p.flags}};
  if (!p.error.empty()) e["error"] = p.error;
  if (p.report) e["report"] = to_json(*p.report);
  return e;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string config_header(const RunConfig& cfg, bool complete) {
  std::ostringstream s;
  s << "# wgqed " << kVersion << " schema " << kSchemaVersion << '\n';
  s << "# config: " << to_json(cfg).dump() << '\n';
  s << "# status: " << (complete ? "complete" : "incomplete") << '\n';
  return s.str();
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& result, const RunConfig& cfg) {
  out << config_header(cfg, result.complete);
  out << "drive_power,omega_p,r,flags\n";
  for (const auto& p : result.points)
    out << format_number(p.drive_power) << ',' << format_number(p.omega_p) << ','
        << format_number(p.r) << ',' << p.flags << '\n';
}

void write_linecut_csv(std::ostream& out, const std::vector<LinecutRow>& rows,
                       const RunConfig& cfg) {
  out << config_header(cfg);
  out << "omega_p,r_full,r_reduced,r_decoupled,flags\n";
  for (const auto& r : rows)
    out << format_number(r.omega_p) << ',' << format_number(r.r_full) << ','
        << format_number(r.r_reduced) << ',' << format_number(r.r_decoupled) << ',' << r.flags
        << '\n';
}

void write_branch_csv(std::ostream& out, const std::vector<BranchPoint>& rows,
                      const RunConfig& cfg) {
  out << config_header(cfg);
  out << "drive_power,omega_p,r_full,r_reduced,r_decoupled,population_difference,"
         "prefactor_re,prefactor_im,classification\n";
  for (const auto& b : rows)
    out << format_number(b.drive_power) << ',' << format_number(b.omega_p) << ','
        << format_number(b.r_full) << ',' << format_number(b.r_reduced) << ','
        << format_number(b.r_decoupled) << ',' << format_number(b.population_difference) << ','
        << format_number(b.prefactor.real()) << ',' << format_number(b.prefactor.imag()) << ','
        << to_string(b.report.classification) << '\n';
}

void write_dephasing_csv(std::ostream& out, const std::vector<DephasingRow>& rows,
                         const RunConfig& cfg) {
  out << config_header(cfg);
  out << "label,pump_order,drive_power,omega_p,gamma_phi,r\n";
  for (const auto& r : rows)
    out << r.label << ',' << r.pump_order << ',' << format_number(r.drive_power) << ','
        << format_number(r.omega_p) << ',' << format_number(r.gamma_phi) << ','
        << format_number(r.r) << '\n';
}

void write_populations_csv(std::ostream& out, const std::vector<PopulationRow>& rows,
                           const RunConfig& cfg, bool complete) {
  out << config_header(cfg, complete);
  out << "drive_power";
  const Eigen::Index d = rows.empty() ? 0 : rows.front().populations.size();
  for (Eigen::Index m = 0; m < d; ++m) out << ",p_D" << m;
  out << '\n';
  for (const auto& r : rows) {
    out << format_number(r.drive_power);
    for (Eigen::Index m = 0; m < r.populations.size(); ++m) out << ',' << format_number(r.populations(m));
    out << '\n';
  }
}

json to_json(const Sideband& s) {
  return {{"mu", s.mu}, {"nu", s.nu}, {"f_offset", s.f_offset}, {"detuning", s.detuning}};
}

json to_json(const SidebandReport& r) {
  json active = json::array();
  for (const auto& s : r.active) active.push_back(to_json(s));
  std::vector<double> pops(r.populations.data(), r.populations.data() + r.populations.size());
  return {{"drive_power", r.drive_power},
          {"omega_p", r.omega_p},
          {"active", active},
          {"populations", pops},
          {"inversion", r.inversion},
          {"r_full", number_or_null(r.r_full)},
          {"r_reduced", number_or_null(r.r_reduced)},
          {"r_decoupled", number_or_null(r.r_decoupled)},
          {"r_single", number_or_null(r.r_single)},
          {"classification", to_string(r.classification)}};
}

SidebandReport report_from_json(const json& j) {
  SidebandReport r;
  r.drive_power = j.at("drive_power").get<double>();
  r.omega_p = j.at("omega_p").get<double>();
  for (const auto& s : j.at("active"))
    r.active.push_back({s.at("mu").get<int>(), s.at("nu").get<int>(),
                        s.at("detuning").get<double>(), s.at("f_offset").get<int>()});
  const auto pops = j.at("populations").get<std::vector<double>>();
  r.populations = Eigen::Map<const Eigen::VectorXd>(pops.data(), static_cast<Eigen::Index>(pops.size()));
  r.inversion = j.at("inversion").get<std::vector<double>>();
  r.r_full = number_from(j.at("r_full"));
  r.r_reduced = number_from(j.at("r_reduced"));
  r.r_decoupled = number_from(j.at("r_decoupled"));
  r.r_single = number_from(j.at("r_single"));
  r.classification = gain_class_from_string(j.at("classification").get<std::string>());
  return r;
}

json diagnostics_json(const SpectrumResult& result, const RunConfig& cfg) {
  json pts = json::array();
  for (const auto& p : result.points)
    if (p.report) pts.push_back(point_json(p));
  return {{"schema_version", kSchemaVersion},
          {"config", to_json(cfg)},
          {"complete", result.complete},
          {"points", pts}};
}

json diagnostics_json(const std::vector<BranchPoint>& rows, const RunConfig& cfg) {
  json pts = json::array();
  for (const auto& b : rows) {
    SpectrumPoint p;
    p.drive_power = b.drive_power;
    p.omega_p = b.omega_p;
    p.r = b.r_full;
    p.report = b.report;
    pts.push_back(point_json(p));
  }
  return {{"schema_version", kSchemaVersion},
          {"config", to_json(cfg)},
          {"complete", true},
          {"points", pts}};
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw Error("csv has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& s = rows.at(row).at(column(name));
  if (s == "nan") return kNaN;
  return std::stod(s);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (t.columns.empty())
      t.columns = split(line);
    else
      t.rows.push_back(split(line));
  }
  return t;
}

}  // namespace wgqed

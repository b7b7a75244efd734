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

#pragma once

// CSV / JSON serialization. Every file starts with the resolved parameter set
// so a result can be traced back to its inputs; no timestamps, so identical
// inputs give identical bytes.

#include "wgqed/config.hpp"
#include "wgqed/dressed.hpp"
#include "wgqed/sweep.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace wgqed {

/// "%.15g"; nan/inf spelled out.
std::string format_number(double x);

/// "# wgqed <version> schema <n>" and "# config: <compact json>" lines.
std::string config_header(const RunConfig& cfg, bool complete = true);

struct LinecutRow {
  double omega_p = 0.0;
  double r_full = 0.0;
  double r_reduced = 0.0;
  double r_decoupled = 0.0;
  unsigned flags = 0;
};

struct DephasingRow {
  std::string label;
  int pump_order = 0;
  double drive_power = 0.0;
  double omega_p = 0.0;
  double gamma_phi = 0.0;
  double r = 0.0;
};

struct PopulationRow {
  double drive_power = 0.0;
  Eigen::VectorXd populations;
};

void write_spectrum_csv(std::ostream& out, const SpectrumResult& result, const RunConfig& cfg);
void write_linecut_csv(std::ostream& out, const std::vector<LinecutRow>& rows, const RunConfig& cfg);
void write_branch_csv(std::ostream& out, const std::vector<BranchPoint>& rows, const RunConfig& cfg);
void write_dephasing_csv(std::ostream& out, const std::vector<DephasingRow>& rows,
                         const RunConfig& cfg);
void write_populations_csv(std::ostream& out, const std::vector<PopulationRow>& rows,
                           const RunConfig& cfg, bool complete = true);

nlohmann::json to_json(const Sideband& s);
nlohmann::json to_json(const SidebandReport& r);
SidebandReport report_from_json(const nlohmann::json& j);

/// {"schema_version", "config", "complete", "points": [{drive_power, omega_p, r, flags, report}]}
/// with only the points that carry a report.
nlohmann::json diagnostics_json(const SpectrumResult& result, const RunConfig& cfg);
nlohmann::json diagnostics_json(const std::vector<BranchPoint>& rows, const RunConfig& cfg);

struct CsvTable {
  std::vector<std::string> comments;  ///< leading '#' lines without the marker
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  ///< throws if absent
  double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace wgqed

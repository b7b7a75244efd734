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

// JSON run description shared by `run`, the presets and oracle-check.
//
//   {
//     "schema_version": 1,
//     "name": "fig3e",
//     "kind": "spectrum" | "linecut" | "branch" | "dephasing",
//     "system": {"levels": 6, "omega10": 2100, "anharmonicity": 100, "gamma10": 1,
//                "positions": [0.0], "bare_decay": [...],
//                "dephasing": {"rate": 0.0, "profile": "quadratic"}},
//     "drive": {"pump_order": 3} or {"omega_d": 2100},
//     "drive_powers": {"log": {"from": 0.1, "to": 1e4, "count": 201}},
//     "probe": {"reference": "omega10", "grid": {"linear": {"from": -150, "to": 50, "count": 201}}},
//     "model": "full", "threshold": 1.0, "diagnostics": true,
//     "branch": {"mu": 4, "nu": 5},
//     "dephasing_scan": {"rates": {...grid...}, "profile": "quadratic",
//                        "points": [{"label": "K=2", "pump_order": 2, "drive_power": 100,
//                                    "probe_offset": -102}]},
//     "oracle": {"probe_rabi": 1e-3},
//     "workers": 1, "output": {"directory": "out"}
//   }
//
// A grid is {"values": [...]}, {"linear": {...}} or {"log": {...}}.

#include "wgqed/model.hpp"
#include "wgqed/sweep.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wgqed {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

struct GridSpec {
  enum class Kind { values, linear, log };
  Kind kind = Kind::values;
  double from = 0.0;
  double to = 0.0;
  int count = 0;
  std::vector<double> list;

  std::vector<double> resolve() const;
  static GridSpec of(std::vector<double> v);
  static GridSpec linear(double a, double b, int n);
  static GridSpec log(double a, double b, int n);
};

enum class RunKind { spectrum, linecut, branch, dephasing };
enum class ProbeReference { absolute, omega10, omega_d };

std::string to_string(RunKind k);
std::string to_string(ProbeReference r);

struct DriveConfig {
  std::optional<int> pump_order;  ///< when set, omega_d follows from the ladder
  double omega_d = 2100.0;

  double resolve(const TransmonSpec& t) const;
};

struct DephasingPointConfig {
  std::string label;
  DriveConfig drive;
  double drive_power = 0.0;
  ProbeReference reference = ProbeReference::omega10;
  double probe_offset = 0.0;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string name = "run";
  RunKind kind = RunKind::spectrum;

  TransmonSpec transmon;           ///< shared ladder; position and dephasing per atom below
  std::vector<double> positions{0.0};
  double dephasing_rate = 0.0;
  DephasingProfile dephasing_profile = DephasingProfile::quadratic;

  DriveConfig drive;
  GridSpec drive_powers = GridSpec::of({0.0});
  ProbeReference probe_reference = ProbeReference::omega10;
  GridSpec probe = GridSpec::of({0.0});

  Model model = Model::full;
  double threshold = kDefaultSidebandThreshold;
  bool diagnostics = false;

  int branch_mu = 4;
  int branch_nu = 5;

  GridSpec dephasing_rates = GridSpec::of({0.0});
  DephasingProfile scan_profile = DephasingProfile::quadratic;
  std::vector<DephasingPointConfig> dephasing_points;

  double oracle_probe_rabi = 1e-3;

  // runtime only: never part of the echoed parameter set
  int workers = 1;
  std::string output_dir = "out";

  ArraySpec array() const;
  DriveSpec drive_spec(double power = 0.0) const;
  std::vector<double> omega_p_values() const;
  double probe_frequency(ProbeReference ref, double offset, double omega_d) const;
};

/// Throws ConfigError naming the offending field path (e.g. "/system/levels").
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Physics parameter set; with runtime = true also workers and output.
nlohmann::json to_json(const RunConfig& cfg, bool runtime = false);

}  // namespace wgqed

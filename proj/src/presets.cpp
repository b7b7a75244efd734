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

#include "wgqed/presets.hpp"

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

RunConfig base(const std::string& name, RunKind kind, int pump_order) {
  RunConfig c;
  c.name = name;
  c.kind = kind;
  c.drive.pump_order = pump_order;
  c.probe_reference = ProbeReference::omega10;
  c.output_dir = "out/" + name;
  return c;
}

RunConfig map(const std::string& name, int order, double lo) {
  RunConfig c = base(name, RunKind::spectrum, order);
  c.drive_powers = GridSpec::log(lo, 1e4, 201);
  c.probe = GridSpec::linear(-150.0, 50.0, 201);
  c.diagnostics = true;
  return c;
}

RunConfig cut(const std::string& name, int order, double power) {
  RunConfig c = base(name, RunKind::linecut, order);
  c.drive_powers = GridSpec::of({power});
  c.probe = GridSpec::linear(-150.0, 50.0, 801);
  c.diagnostics = true;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3a", "fig3b", "fig3d", "fig3e", "fig4"};
}

RunConfig preset_config(const std::string& name) {
  if (name == "fig2a") return map(name, 1, 0.1);
  if (name == "fig3a") return map(name, 2, 1.0);
  if (name == "fig3d") return map(name, 3, 1.0);
  if (name == "fig3b") return cut(name, 2, 100.0);
  if (name == "fig3e") return cut(name, 3, 5600.0);
  if (name == "fig2b") {
    RunConfig c = base(name, RunKind::branch, 1);
    c.drive_powers = GridSpec::log(10.0, 1e4, 50);
    c.branch_mu = 4;
    c.branch_nu = 5;
    c.diagnostics = true;
    return c;
  }
  if (name == "fig4") {
    RunConfig c = base(name, RunKind::dephasing, 1);
    c.dephasing_rates = GridSpec::linear(0.0, 0.1, 51);
    c.scan_profile = DephasingProfile::quadratic;
    DephasingPointConfig k2;
    k2.label = "K=2";
    k2.drive.pump_order = 2;
    k2.drive_power = 100.0;
    k2.probe_offset = -102.0;
    DephasingPointConfig k3;
    k3.label = "K=3";
    k3.drive.pump_order = 3;
    k3.drive_power = 5600.0;
    k3.probe_offset = -12.1;
    c.dephasing_points = {k2, k3};
    return c;
  }
  throw InvalidSpec("unknown preset '" + name + "'");
}

}  // namespace wgqed

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
#include "wgqed/output.hpp"

#include <filesystem>
#include <fstream>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace wgqed {

using nlohmann::json;

std::string transition_label(int mu, int nu, int f_offset) {
  const std::string f = f_offset == 0 ? "F" : (f_offset > 0 ? "F+" : "F-") + std::to_string(std::abs(f_offset));
  return "|D" + std::to_string(nu) + "," + f + "> <-> |D" + std::to_string(mu) + ",F>";
}

json annotate_diagnostics(const json& diag) {
  struct Branch {
    int points = 0;
    double max_r = 0.0;
    double min_power = 0.0;
    double max_power = 0.0;
    std::map<std::string, int> classes;
  };
  std::map<std::tuple<int, int, int>, Branch> branches;

  json points = json::array();
  for (const auto& p : diag.at("points")) {
    if (!p.contains("report")) continue;
    const SidebandReport rep = report_from_json(p.at("report"));
    const double r = p.at("r").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                         : p.at("r").get<double>();
    json e = {{"drive_power", p.at("drive_power")},
              {"omega_p", p.at("omega_p")},
              {"r", p.at("r")},
              {"classification", to_string(rep.classification)}};
    if (rep.active.empty()) {
      e["transitions"] = "none active";
    } else {
      json tr = json::array();
      for (std::size_t i = 0; i < rep.active.size(); ++i) {
        const auto& s = rep.active[i];
        tr.push_back({{"mu", s.mu},
                      {"nu", s.nu},
                      {"f_offset", s.f_offset},
                      {"label", transition_label(s.mu, s.nu, s.f_offset)},
                      {"inverted", rep.inversion[i] > 0.0}});
        Branch& b = branches[{s.mu, s.nu, s.f_offset}];
        const double power = p.at("drive_power").get<double>();
        if (b.points == 0) b.min_power = b.max_power = power;
        b.min_power = std::min(b.min_power, power);
        b.max_power = std::max(b.max_power, power);
        if (std::isfinite(r)) b.max_r = std::max(b.max_r, r);
        ++b.points;
        ++b.classes[to_string(rep.classification)];
      }
      e["transitions"] = tr;
    }
    points.push_back(e);
  }

  json out_branches = json::array();
  for (const auto& [key, b] : branches) {
    const auto [mu, nu, f] = key;
    out_branches.push_back({{"mu", mu},
                            {"nu", nu},
                            {"f_offset", f},
                            {"label", transition_label(mu, nu, f)},
                            {"points", b.points},
                            {"max_r", b.max_r},
                            {"drive_power_range", {b.min_power, b.max_power}},
                            {"classifications", b.classes}});
  }
  json out = {{"schema_version", kSchemaVersion}, {"points", points}, {"branches", out_branches}};
  if (diag.contains("config")) out["config"] = diag["config"];
  if (points.empty()) out["note"] = "none active";
  return out;
}

std::string annotate_run(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path in = fs::path(dir) / "diagnostics.json";
  std::ifstream f(in);
  if (!f) throw Error("no diagnostics in " + dir + " (run with diagnostics enabled)");
  const json diag = json::parse(f);
  const fs::path out = fs::path(dir) / "annotations.json";
  std::ofstream o(out, std::ios::binary);
  if (!o) throw Error("cannot write " + out.string());
  o << annotate_diagnostics(diag).dump(1) << '\n';
  return out.string();
}

}  // namespace wgqed

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

#include "wgqed/config.hpp"

#include <json.hpp>

#include <atomic>
#include <string>
#include <vector>

namespace wgqed {

/// fig2a, fig2b, fig3a, fig3b, fig3d, fig3e, fig4.
std::vector<std::string> preset_names();
/// Throws InvalidSpec for an unknown name.
RunConfig preset_config(const std::string& name);

struct RunSummary {
  std::vector<std::string> files;
  bool complete = true;
};

/// Executes the pipeline for cfg.kind and writes its files into cfg.output_dir.
RunSummary run_config(const RunConfig& cfg, const std::atomic<bool>* cancel = nullptr);

/// Transition label "|D5,F+1> <-> |D4,F>".
std::string transition_label(int mu, int nu, int f_offset);

/// Per-point and per-branch labels from a diagnostics document.
nlohmann::json annotate_diagnostics(const nlohmann::json& diagnostics);

/// Reads <dir>/diagnostics.json, writes <dir>/annotations.json and returns its path.
std::string annotate_run(const std::string& dir);

}  // namespace wgqed

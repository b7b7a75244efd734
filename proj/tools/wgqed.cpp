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

// wgqed command-line front end.

#include "wgqed/config.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/output.hpp"
#include "wgqed/presets.hpp"
#include "wgqed/sweep.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct Overrides {
  int workers = 0;
  std::string out;
  double threshold = -1.0;
  std::string model;
  std::uint64_t seed = 1;
};

void apply(wgqed::RunConfig& cfg, const Overrides& o) {
  if (o.workers > 0) cfg.workers = o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.threshold >= 0.0) cfg.threshold = o.threshold;
  if (!o.model.empty()) cfg.model = wgqed::model_from_string(o.model);
}

int report(const wgqed::RunConfig& cfg, const wgqed::RunSummary& s) {
  for (const auto& f : s.files) std::cout << f << '\n';
  if (!s.complete) {
    std::cerr << cfg.name << ": interrupted, outputs marked incomplete\n";
    return 130;
  }
  return 0;
}

int oracle_check(const wgqed::RunConfig& cfg, int points, std::uint64_t seed) {
  using namespace wgqed;
  if (cfg.kind != RunKind::spectrum && cfg.kind != RunKind::linecut)
    throw ConfigError("/kind", "oracle-check needs a spectrum or linecut grid");
  const auto powers = cfg.drive_powers.resolve();
  const auto probes = cfg.omega_p_values();
  const std::size_t total = powers.size() * probes.size();
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min<std::size_t>(total, static_cast<std::size_t>(points)));

  const ArraySpec array = cfg.array();
  std::filesystem::create_directories(cfg.output_dir);
  const std::string path = (std::filesystem::path(cfg.output_dir) / "oracle_check.csv").string();
  std::ofstream csv(path, std::ios::binary);
  csv << config_header(cfg) << "drive_power,omega_p,r_full,r_oracle,difference\n";

  double worst = 0.0;
  bool failed = false;
  for (std::size_t i : idx) {
    if (g_cancel.load()) return 130;
    const double p = powers[i / probes.size()];
    const double w = probes[i % probes.size()];
    const DriveSpec d = cfg.drive_spec(p);
    try {
      const double rf = evaluate_point(array, d, w, Model::full, cfg.threshold);
      const double ro = evaluate_point(array, d, w, Model::oracle, cfg.threshold, cfg.oracle_probe_rabi);
      const double diff = ro - rf;
      worst = std::max(worst, std::abs(diff));
      std::printf("P=%-12.6g omega_p=%-12.6f r_full=%.9f r_oracle=%.9f diff=%+.2e\n", p, w, rf, ro, diff);
      csv << format_number(p) << ',' << format_number(w) << ',' << format_number(rf) << ','
          << format_number(ro) << ',' << format_number(diff) << '\n';
    } catch (const Error& e) {
      failed = true;
      std::printf("P=%-12.6g omega_p=%-12.6f error: %s\n", p, w, e.what());
    }
  }
  std::printf("max |r_oracle - r_full| = %.3e over %zu points\n", worst, idx.size());
  return failed || worst > 1e-3 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);

  CLI::App app{"Reflection spectra of a driven multi-level transmon in front of a mirror"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--threshold", o.threshold, "sideband detuning threshold [gamma10]");
  app.add_option("--model", o.model, "full, reduced, decoupled, single or oracle");
  app.add_option("--seed-grid", o.seed, "seed for sampling grid points");

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "run a built-in figure scenario");
  preset->add_option("name", preset_name)->required();

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a JSON config");
  run->add_option("config", config_path)->required()->check(CLI::ExistingFile);

  std::string run_dir;
  auto* annotate = app.add_subcommand("annotate", "label sideband branches of a finished run");
  annotate->add_option("run-dir", run_dir)->required()->check(CLI::ExistingDirectory);

  int points = 20;
  auto* check = app.add_subcommand("oracle-check", "compare against time-domain integration");
  check->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  check->add_option("--points", points, "number of sampled grid points")->check(CLI::PositiveNumber);

  for (auto* sub : {preset, run, annotate, check}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*preset) {
      auto cfg = wgqed::preset_config(preset_name);
      apply(cfg, o);
      return report(cfg, wgqed::run_config(cfg, &g_cancel));
    }
    if (*run) {
      auto cfg = wgqed::load_config(config_path);
      apply(cfg, o);
      return report(cfg, wgqed::run_config(cfg, &g_cancel));
    }
    if (*annotate) {
      std::cout << wgqed::annotate_run(run_dir) << '\n';
      return 0;
    }
    if (*check) {
      auto cfg = wgqed::load_config(config_path);
      apply(cfg, o);
      return oracle_check(cfg, points, o.seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "wgqed: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

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
#include "wgqed/response.hpp"
#include "wgqed/sweep.hpp"

#include <filesystem>
#include <fstream>

namespace wgqed {

namespace fs = std::filesystem;

namespace {

struct Writer {
  fs::path dir;
  RunSummary* summary;

  std::ofstream open(const std::string& name) {
    const fs::path p = dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    summary->files.push_back(p.string());
    return f;
  }
};

SweepOptions sweep_options(const RunConfig& c, Model model, bool diagnostics,
                           const std::atomic<bool>* cancel) {
  SweepOptions o;
  o.model = model;
  o.workers = c.workers;
  o.diagnostics = diagnostics;
  o.threshold = c.threshold;
  o.probe_rabi = c.oracle_probe_rabi;
  o.cancel = cancel;
  return o;
}

std::vector<PopulationRow> populations(const RunConfig& c, const std::vector<double>& powers,
                                       const std::atomic<bool>* cancel, bool* complete) {
  const ArraySpec array = c.array();
  const RateTable rates = collective_rates(array);
  std::vector<PopulationRow> rows;
  for (double p : powers) {
    if (cancel && cancel->load()) {
      *complete = false;
      break;
    }
    const DriveSpec d = c.drive_spec(p);
    PopulationRow row;
    row.drive_power = p;
    try {
      const DenseOperator rho0 = steady_state(build_liouvillian0(array, d, rates)).rho;
      row.populations = dressed_populations(rho0, dressed_basis(array, d)).populations;
    } catch (const Error&) {
      const Eigen::Index dim = LadderOps(array.levels(), array.atoms()).dim();
      row.populations = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::quiet_NaN());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RunSummary run_config(const RunConfig& cfg, const std::atomic<bool>* cancel) {
  RunSummary summary;
  fs::create_directories(cfg.output_dir);
  Writer w{cfg.output_dir, &summary};
  const ArraySpec array = cfg.array();
  const DriveSpec drive = cfg.drive_spec();
  {
    auto f = w.open("config.json");
    f << to_json(cfg).dump(1) << '\n';
  }

  switch (cfg.kind) {
    case RunKind::spectrum: {
      const SweepGrid grid{cfg.drive_powers.resolve(), cfg.omega_p_values()};
      const SpectrumResult res =
          sweep(array, drive, grid, sweep_options(cfg, cfg.model, cfg.diagnostics, cancel));
      summary.complete = res.complete;
      {
        auto f = w.open("spectrum.csv");
        write_spectrum_csv(f, res, cfg);
      }
      bool pops_complete = true;
      const auto pops = populations(cfg, grid.drive_powers, cancel, &pops_complete);
      summary.complete = summary.complete && pops_complete;
      {
        auto f = w.open("populations.csv");
        write_populations_csv(f, pops, cfg, pops_complete);
      }
      if (cfg.diagnostics) {
        auto f = w.open("diagnostics.json");
        f << diagnostics_json(res, cfg).dump(1) << '\n';
      }
      break;
    }
    case RunKind::linecut: {
      const SweepGrid grid{cfg.drive_powers.resolve(), cfg.omega_p_values()};
      const SpectrumResult full =
          sweep(array, drive, grid, sweep_options(cfg, Model::full, cfg.diagnostics, cancel));
      const SpectrumResult red =
          sweep(array, drive, grid, sweep_options(cfg, Model::reduced, false, cancel));
      const SpectrumResult dec =
          sweep(array, drive, grid, sweep_options(cfg, Model::decoupled, false, cancel));
      summary.complete = full.complete && red.complete && dec.complete;
      std::vector<LinecutRow> rows;
      for (std::size_t k = 0; k < grid.omega_p.size(); ++k) {
        const auto& a = full.at(0, k);
        rows.push_back({a.omega_p, a.r, red.at(0, k).r, dec.at(0, k).r,
                        a.flags | red.at(0, k).flags | dec.at(0, k).flags});
      }
      {
        auto f = w.open("linecut.csv");
        write_linecut_csv(f, rows, cfg);
      }
      if (cfg.diagnostics) {
        auto f = w.open("diagnostics.json");
        f << diagnostics_json(full, cfg).dump(1) << '\n';
      }
      break;
    }
    case RunKind::branch: {
      const auto rows = branch_scan(array, drive, cfg.drive_powers.resolve(), cfg.branch_mu,
                                    cfg.branch_nu, cfg.threshold, cfg.workers);
      {
        auto f = w.open("branch.csv");
        write_branch_csv(f, rows, cfg);
      }
      auto f = w.open("diagnostics.json");
      f << diagnostics_json(rows, cfg).dump(1) << '\n';
      break;
    }
    case RunKind::dephasing: {
      std::vector<DephasingRow> rows;
      const auto rates = cfg.dephasing_rates.resolve();
      for (const auto& p : cfg.dephasing_points) {
        DriveSpec d;
        d.omega_d = p.drive.resolve(cfg.transmon);
        d.rabi = std::sqrt(p.drive_power);
        d.pump_order = p.drive.pump_order.value_or(1);
        const double wp = cfg.probe_frequency(p.reference, p.probe_offset, d.omega_d);
        for (const auto& s : dephasing_scan(array, d, wp, rates, cfg.scan_profile, cfg.model,
                                            cfg.threshold))
          rows.push_back({p.label, d.pump_order, p.drive_power, wp, s.gamma_phi, s.r});
      }
      auto f = w.open("dephasing.csv");
      write_dephasing_csv(f, rows, cfg);
      break;
    }
  }
  return summary;
}

}  // namespace wgqed

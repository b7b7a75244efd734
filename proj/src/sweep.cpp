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

#include "wgqed/sweep.hpp"

#include "wgqed/errors.hpp"
#include "wgqed/response.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace wgqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Everything that only depends on the drive.
struct RowContext {
  const ArraySpec& array;
  DriveSpec drive;
  RateTable rates;
  Superoperator l0;
  DenseOperator rho0;
  std::optional<DressedAnalysis> dressed;

  RowContext(const ArraySpec& a, const DriveSpec& d, bool need_dressed)
      : array(a), drive(d), rates(collective_rates(a)) {
    l0 = build_liouvillian0(array, drive, rates);
    rho0 = steady_state(l0).rho;
    if (need_dressed) dressed = analyze_drive(array, drive, rates, rho0);
  }

  double full(double omega_p) const {
    ProbeSpec p;
    p.omega_p = omega_p;
    const ProbeGenerators g = build_probe_superops(array, p);
    const LinearResponse lr = linear_response_rho1(l0, g.plus, rho0, omega_p - drive.omega_d,
                                                   array.front().gamma10);
    return reflection(lr.rho1, array, rates, omega_p);
  }
};

bool needs_dressed(Model m, bool diagnostics) {
  return diagnostics || m == Model::reduced || m == Model::decoupled || m == Model::single;
}

void evaluate(const RowContext& ctx, SpectrumPoint& pt, const SweepOptions& opt) {
  bool nudged = false;
  const double w = nudge_probe(pt.omega_p, ctx.drive.omega_d, &nudged);
  if (nudged && opt.model != Model::oracle) pt.flags |= kFlagNudged;
  std::optional<SidebandReport> rep;
  switch (opt.model) {
    case Model::full:
      pt.r = ctx.full(w);
      break;
    case Model::oracle: {
      ProbeSpec p;
      p.omega_p = pt.omega_p;
      p.rabi = opt.probe_rabi;
      pt.r = oracle_reflection(ctx.array, ctx.drive, p, opt.oracle).r;
      break;
    }
    case Model::reduced:
    case Model::decoupled:
    case Model::single:
      rep = sideband_report(*ctx.dressed, ctx.array, ctx.rates, w, opt.threshold);
      pt.r = opt.model == Model::reduced     ? rep->r_reduced
             : opt.model == Model::decoupled ? rep->r_decoupled
                                             : rep->r_single;
      if (rep->active.empty()) pt.flags |= kFlagNoSidebands;
      break;
  }
  if (opt.diagnostics && std::abs(pt.r - 1.0) >= opt.diagnostics_min_deviation) {
    if (!rep || opt.model == Model::full) {
      rep = sideband_report(*ctx.dressed, ctx.array, ctx.rates, w, opt.threshold,
                            opt.model == Model::full ? pt.r : kNaN);
    }
    rep->drive_power = pt.drive_power;
    pt.report = std::move(rep);
  }
}

void evaluate_row(const ArraySpec& array, const DriveSpec& base, std::size_t row,
                  SpectrumResult& out, const SweepOptions& opt) {
  const std::size_t np = out.omega_p.size();
  DriveSpec drive = base;
  drive.rabi = std::sqrt(out.drive_powers[row]);
  SpectrumPoint* pts = out.points.data() + row * np;
  for (std::size_t k = 0; k < np; ++k) {
    pts[k].drive_power = out.drive_powers[row];
    pts[k].omega_p = out.omega_p[k];
    pts[k].r = kNaN;
    pts[k].flags = 0;
  }
  std::optional<RowContext> ctx;
  try {
    ctx.emplace(array, drive, needs_dressed(opt.model, opt.diagnostics));
  } catch (const DegenerateSteadyState& e) {
    for (std::size_t k = 0; k < np; ++k) {
      pts[k].flags |= kFlagDegenerate;
      pts[k].error = e.what();
    }
    return;
  } catch (const std::exception& e) {
    for (std::size_t k = 0; k < np; ++k) {
      pts[k].flags |= kFlagSolverError;
      pts[k].error = e.what();
    }
    return;
  }
  for (std::size_t k = 0; k < np; ++k) {
    try {
      evaluate(*ctx, pts[k], opt);
    } catch (const std::exception& e) {
      pts[k].r = kNaN;
      pts[k].flags |= kFlagSolverError;
      pts[k].error = e.what();
    }
  }
}

template <class F>
void parallel_for(std::size_t count, int workers, F&& body) {
  std::atomic<std::size_t> next{0};
  std::mutex m;
  std::exception_ptr failure;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::full: return "full";
    case Model::reduced: return "reduced";
    case Model::decoupled: return "decoupled";
    case Model::single: return "single";
    case Model::oracle: return "oracle";
  }
  return "full";
}

Model model_from_string(const std::string& s) {
  if (s == "full") return Model::full;
  if (s == "reduced") return Model::reduced;
  if (s == "decoupled") return Model::decoupled;
  if (s == "single") return Model::single;
  if (s == "oracle") return Model::oracle;
  throw InvalidSpec("unknown model '" + s + "'");
}

SpectrumResult sweep(const ArraySpec& array, const DriveSpec& drive, const SweepGrid& grid,
                     const SweepOptions& options) {
  array.validate();
  drive.validate();
  if (grid.drive_powers.empty() || grid.omega_p.empty()) throw InvalidSpec("empty sweep grid");
  for (double p : grid.drive_powers)
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidSpec("drive power must be finite and >= 0");

  SpectrumResult out;
  out.drive_powers = grid.drive_powers;
  out.omega_p = grid.omega_p;
  out.points.resize(out.drive_powers.size() * out.omega_p.size());
  std::vector<char> done(out.drive_powers.size(), 0);

  parallel_for(out.drive_powers.size(), options.workers, [&](std::size_t row) {
    if (options.cancel && options.cancel->load()) return;
    evaluate_row(array, drive, row, out, options);
    done[row] = 1;
  });

  const std::size_t np = out.omega_p.size();
  for (std::size_t row = 0; row < done.size(); ++row) {
    if (done[row]) continue;
    out.complete = false;
    for (std::size_t k = 0; k < np; ++k) {
      auto& pt = out.points[row * np + k];
      pt = SpectrumPoint{};
      pt.drive_power = out.drive_powers[row];
      pt.omega_p = out.omega_p[k];
      pt.r = kNaN;
      pt.flags = kFlagNotComputed;
    }
  }
  return out;
}

std::vector<BranchPoint> branch_scan(const ArraySpec& array, const DriveSpec& drive,
                                     const std::vector<double>& drive_powers, int mu, int nu,
                                     double threshold, int workers) {
  std::vector<BranchPoint> out(drive_powers.size());
  parallel_for(drive_powers.size(), workers, [&](std::size_t i) {
    DriveSpec d = drive;
    d.rabi = std::sqrt(drive_powers[i]);
    const RowContext ctx(array, d, true);
    const auto& an = *ctx.dressed;
    if (mu < 0 || nu < 0 || mu >= an.basis.dim() || nu >= an.basis.dim())
      throw InvalidSpec("branch indices out of range");
    BranchPoint& b = out[i];
    b.drive_power = drive_powers[i];
    b.omega_p = nudge_probe(d.omega_d + an.basis.energies(nu) - an.basis.energies(mu), d.omega_d);
    b.r_full = ctx.full(b.omega_p);
    b.report = sideband_report(an, array, ctx.rates, b.omega_p, threshold, b.r_full);
    b.report.drive_power = b.drive_power;
    b.r_reduced = b.report.r_reduced;
    b.r_decoupled = b.report.r_decoupled;
    const Eigen::MatrixXcd c = coefficient_C(an.basis, array, ctx.rates, b.omega_p);
    const PumpTerms pump = pump_terms(an.basis, an.rho0, array, b.omega_p);
    const SingleSideband s = single_sideband_r(mu, nu, an.rates, pump, c, an.populations);
    b.population_difference = s.population_difference;
    b.prefactor = s.prefactor;
  });
  return out;
}

std::vector<DephasingPoint> dephasing_scan(const ArraySpec& array, const DriveSpec& drive,
                                           double omega_p, const std::vector<double>& rates,
                                           DephasingProfile profile, Model model,
                                           double threshold) {
  std::vector<DephasingPoint> out;
  out.reserve(rates.size());
  for (double g : rates) {
    ArraySpec a = array;
    for (auto& t : a.transmons) t.dephasing = dephasing_rates(t.levels, g, profile);
    out.push_back({g, evaluate_point(a, drive, omega_p, model, threshold)});
  }
  return out;
}

double evaluate_point(const ArraySpec& array, const DriveSpec& drive, double omega_p, Model model,
                      double threshold, double probe_rabi, const OracleOptions& oracle) {
  array.validate();
  drive.validate();
  const RowContext ctx(array, drive, needs_dressed(model, false));
  SpectrumPoint pt;
  pt.omega_p = omega_p;
  pt.drive_power = drive.power();
  SweepOptions opt;
  opt.model = model;
  opt.threshold = threshold;
  opt.probe_rabi = probe_rabi;
  opt.oracle = oracle;
  evaluate(ctx, pt, opt);
  return pt.r;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(std::max(n, 0));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidSpec("logspace endpoints must be positive");
  auto v = linspace(std::log10(a), std::log10(b), n);
  for (auto& x : v) x = std::pow(10.0, x);
  return v;
}

}  // namespace wgqed

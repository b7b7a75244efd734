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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Runtimes are measured on this machine.

#include "wgqed/dressed.hpp"
#include "wgqed/model.hpp"
#include "wgqed/operators.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/presets.hpp"
#include "wgqed/response.hpp"
#include "wgqed/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace wgqed;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool ok, double elapsed, double limit, const std::string& detail) {
  const bool pass = ok && elapsed < limit;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", id,
              detail.c_str(), elapsed, limit);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

TransmonSpec transmon(double dephasing = 0.0) {
  TransmonSpec t;
  if (dephasing > 0.0) t.dephasing = dephasing_rates(t.levels, dephasing, DephasingProfile::quadratic);
  return t;
}

struct Point {
  int order;
  double power;
  double offset;  // omega_p - omega10
};

constexpr Point kK2{2, 100.0, -102.0};
constexpr Point kK3{3, 5600.0, -12.1};

struct Evaluated {
  double r_full;
  SidebandReport report;
};

Evaluated evaluate(const Point& p, double dephasing = 0.0) {
  const TransmonSpec t = transmon(dephasing);
  const ArraySpec a = ArraySpec::single(t);
  const DriveSpec d = DriveSpec::k_photon(t, p.order, std::sqrt(p.power));
  const RateTable rates = collective_rates(a);
  const Superoperator l0 = build_liouvillian0(a, d, rates);
  const DenseOperator rho0 = steady_state(l0).rho;
  const double wp = t.omega10 + p.offset;
  ProbeSpec probe;
  probe.omega_p = wp;
  const DenseOperator rho1 =
      linear_response_rho1(l0, build_probe_superops(a, probe).plus, rho0, wp - d.omega_d).rho1;
  const double r = reflection(rho1, a, rates, wp);
  const DressedAnalysis an = analyze_drive(a, d, rates, rho0);
  return {r, sideband_report(an, a, rates, wp, kDefaultSidebandThreshold, r)};
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  const Evaluated e = evaluate(kK2);
  bool inverted = false;
  for (double p : e.report.inversion) inverted = inverted || p > 0.0;
  const bool ok = e.r_full >= 1.08 && e.r_full <= 1.12 && !inverted && !e.report.active.empty() &&
                  std::abs(e.report.r_decoupled - 1.0) <= 0.02;
  verdict(1, ok, seconds_since(t0), 1.0,
          fmt("K=2 r_full=%.4f", e.r_full) + fmt(" r_decoupled=%.4f", e.report.r_decoupled) +
              " active=" + std::to_string(e.report.active.size()) +
              (inverted ? " inverted" : " no inversion"));
}

void criterion2() {
  const auto t0 = Clock::now();
  const Evaluated e = evaluate(kK3);
  const bool ok = std::abs(e.r_full - 1.215) <= 0.02 && std::abs(e.report.r_decoupled - 1.125) <= 0.02;
  verdict(2, ok, seconds_since(t0), 1.0,
          fmt("K=3 r_full=%.4f", e.r_full) + fmt(" r_decoupled=%.4f", e.report.r_decoupled));
}

void criterion3() {
  const auto t0 = Clock::now();
  const double r014 = evaluate(kK3, 0.014).r_full;
  const std::vector<double> rates = linspace(0.0, 0.1, 51);
  bool monotone = true;
  for (const Point& p : {kK2, kK3}) {
    const TransmonSpec t = transmon();
    const ArraySpec a = ArraySpec::single(t);
    const auto scan = dephasing_scan(a, DriveSpec::k_photon(t, p.order, std::sqrt(p.power)),
                                     t.omega10 + p.offset, rates, DephasingProfile::quadratic);
    for (std::size_t i = 1; i < scan.size(); ++i)
      monotone = monotone && scan[i].r <= scan[i - 1].r + 1e-12;
  }
  verdict(3, std::abs(r014 - 1.18) <= 0.01 && monotone, seconds_since(t0), 5.0,
          fmt("r(gamma_phi=0.014)=%.4f", r014) + (monotone ? " monotone" : " not monotone"));
}

void criterion4() {
  const auto t0 = Clock::now();
  DriveSpec d;
  d.omega_d = TransmonSpec{}.omega10;
  const auto branch =
      branch_scan(ArraySpec::single(transmon()), d, logspace(10.0, 1e4, 50), 4, 5);
  double worst = 0.0;
  int sign_mismatch = 0;
  for (const auto& b : branch) {
    worst = std::max(worst, std::abs(b.r_reduced - b.r_full));
    const bool gain = b.r_full > 1.0;
    const bool inverted = b.population_difference > 0.0;
    if (gain != inverted) ++sign_mismatch;
  }
  verdict(4, branch.size() == 50 && worst <= 0.01 && sign_mismatch == 0, seconds_since(t0), 30.0,
          fmt("max|r_reduced-r_full|=%.4f", worst) +
              " sign mismatches=" + std::to_string(sign_mismatch));
}

// --- splitting topology ---------------------------------------------------

struct Cut {
  std::vector<double> offset;
  std::vector<double> dev;  // |r - 1|
};

Cut fine_cut(double power, double lo, double hi, int n = 2001) {
  const TransmonSpec t = transmon();
  const ArraySpec a = ArraySpec::single(t);
  DriveSpec d;
  d.omega_d = t.omega10;
  d.rabi = std::sqrt(power);
  const RateTable rates = collective_rates(a);
  const Superoperator l0 = build_liouvillian0(a, d, rates);
  const DenseOperator rho0 = steady_state(l0).rho;
  Cut c;
  c.offset = linspace(lo, hi, n);
  for (double off : c.offset) {
    ProbeSpec p;
    p.omega_p = nudge_probe(t.omega10 + off, d.omega_d);
    const DenseOperator rho1 =
        linear_response_rho1(l0, build_probe_superops(a, p).plus, rho0, p.omega_p - d.omega_d).rho1;
    c.dev.push_back(std::abs(reflection(rho1, a, rates, p.omega_p) - 1.0));
  }
  return c;
}

// Local maxima of |r-1| reaching a quarter of the strongest one.
std::vector<std::size_t> features(const Cut& c) {
  const double top = *std::max_element(c.dev.begin(), c.dev.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < c.dev.size(); ++i)
    if (c.dev[i] >= c.dev[i - 1] && c.dev[i] > c.dev[i + 1] && c.dev[i] >= 0.25 * top &&
        c.dev[i] > 1e-3)
      out.push_back(i);
  return out;
}

// Full width at half maximum of the strongest feature.
double fwhm(const Cut& c) {
  const auto it = std::max_element(c.dev.begin(), c.dev.end());
  const std::size_t k = static_cast<std::size_t>(it - c.dev.begin());
  const double half = 0.5 * *it;
  std::size_t l = k, r = k;
  while (l > 0 && c.dev[l] > half) --l;
  while (r + 1 < c.dev.size() && c.dev[r] > half) ++r;
  return c.offset[r] - c.offset[l];
}

// Two features further apart than the unsplit linewidth.
bool resolved(const Cut& c, double linewidth, double* separation) {
  const auto f = features(c);
  *separation = f.size() < 2 ? 0.0 : c.offset[f.back()] - c.offset[f.front()];
  return f.size() >= 2 && *separation > linewidth;
}

void criterion5() {
  const RunConfig cfg = preset_config("fig2a");
  const std::vector<double> powers = cfg.drive_powers.resolve();
  bool ok = true;
  std::string detail;

  // 1-0 feature, window +-30 around omega10
  const Cut weak10 = fine_cut(0.1, -30.0, 30.0);
  const double w10 = fwhm(weak10);
  const bool unsplit10 = features(weak10).size() == 1;
  int split10 = 0, rows10 = 0;
  double sep = 0.0, min_sep10 = 1e300;
  for (double p : powers) {
    if (p < 10.0 || p > std::pow(10.0, 2.5) * 1.0001) continue;
    ++rows10;
    if (resolved(fine_cut(p, -30.0, 30.0), w10, &sep)) ++split10;
    min_sep10 = std::min(min_sep10, sep);
  }
  ok = ok && unsplit10 && split10 == rows10;
  detail += fmt("1-0: linewidth %.2f", w10) + (unsplit10 ? " unsplit at 0.1," : " SPLIT at 0.1,") +
            " resolved " + std::to_string(split10) + "/" + std::to_string(rows10) +
            fmt(" rows in [1e1,1e2.5] (min sep %.2f)", min_sep10);

  // 2-1 feature, window -125..-75
  const Cut weak21 = fine_cut(0.1, -125.0, -75.0);
  const double w21 = fwhm(weak21);
  const auto f21 = features(weak21);
  const bool near100 = f21.size() == 1 && std::abs(weak21.offset[f21.front()] + 100.0) <= 2.0;
  // onset: first row from which the pair stays resolved up to 10^2.5
  double onset = NAN;
  for (auto it = powers.rbegin(); it != powers.rend(); ++it) {
    if (*it > std::pow(10.0, 2.5) * 1.0001) continue;
    if (!resolved(fine_cut(*it, -125.0, -75.0), w21, &sep)) break;
    onset = *it;
  }
  // reference onset 10^1 (the quoted "splits for >~ 10^1"), half a decade either way
  const bool onset_ok = std::isfinite(onset) && std::abs(std::log10(onset) - 1.0) <= 0.5;
  ok = ok && near100 && onset_ok;
  detail += fmt("; 2-1: at %.2f", f21.empty() ? NAN : weak21.offset[f21.front()]) +
            fmt(", linewidth %.2f", w21) + fmt(", split onset 10^%.2f", std::log10(onset));

  // runtime of the full map
  SweepGrid grid{powers, cfg.omega_p_values()};
  SweepOptions opt;
  opt.model = cfg.model;
  opt.diagnostics = cfg.diagnostics;
  opt.threshold = cfg.threshold;
  const DriveSpec drive = cfg.drive_spec();
  auto t0 = Clock::now();
  const SpectrumResult one = sweep(cfg.array(), drive, grid, opt);
  const double t1 = seconds_since(t0);
  opt.workers = 8;
  t0 = Clock::now();
  const SpectrumResult eight = sweep(cfg.array(), drive, grid, opt);
  const double t8 = seconds_since(t0);
  bool same = one.points.size() == eight.points.size();
  for (std::size_t i = 0; same && i < one.points.size(); ++i)
    same = one.points[i].r == eight.points[i].r || (std::isnan(one.points[i].r) && std::isnan(eight.points[i].r));
  ok = ok && same && one.complete && t1 < 300.0;
  detail += fmt("; 201x201 map %.1f s at 1 worker", t1) + fmt(", %.1f s at 8", t8);
  verdict(5, ok, t8, 60.0, detail);
}

// --- oracle ---------------------------------------------------------------

double perturbative(const ArraySpec& a, const DriveSpec& d, double wp,
                    const std::optional<DenseOperator>& reference = std::nullopt) {
  const RateTable rates = collective_rates(a);
  const Superoperator l0 = build_liouvillian0(a, d, rates);
  SteadyStateOptions so;
  so.reference = reference;
  const DenseOperator rho0 = steady_state(l0, so).rho;
  ProbeSpec p;
  p.omega_p = nudge_probe(wp, d.omega_d);
  const DenseOperator rho1 =
      linear_response_rho1(l0, build_probe_superops(a, p).plus, rho0, p.omega_p - d.omega_d).rho1;
  return reflection(rho1, a, rates, p.omega_p);
}

double oracle(const ArraySpec& a, const DriveSpec& d, double wp, double probe_rabi) {
  ProbeSpec p;
  p.omega_p = nudge_probe(wp, d.omega_d);
  p.rabi = probe_rabi;
  return oracle_reflection(a, d, p).r;
}

struct Sample {
  std::string preset;
  double power;
  double omega_p;
};

// Grid points of the K=1, 2, 3 maps in turn, indices drawn from a fixed seed.
std::vector<Sample> sample_grid(int count, std::uint64_t seed, bool avoid_carrier) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> maps{"fig2a", "fig3a", "fig3d"};
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const RunConfig cfg = preset_config(maps[out.size() % maps.size()]);
    const auto powers = cfg.drive_powers.resolve();
    const auto probes = cfg.omega_p_values();
    const double wp = probes[std::uniform_int_distribution<std::size_t>(0, probes.size() - 1)(rng)];
    const double pw = powers[std::uniform_int_distribution<std::size_t>(0, powers.size() - 1)(rng)];
    if (avoid_carrier && std::abs(wp - cfg.drive_spec().omega_d) < 0.5) continue;
    out.push_back({cfg.name, pw, wp});
  }
  return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

void criterion6() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int errors = 0;
  for (const Sample& s : sample_grid(20, 20260101, false)) {
    const RunConfig cfg = preset_config(s.preset);
    const DriveSpec d = cfg.drive_spec(s.power);
    try {
      worst = std::max(worst, std::abs(oracle(cfg.array(), d, s.omega_p, 1e-3) -
                                       perturbative(cfg.array(), d, s.omega_p)));
    } catch (const std::exception& e) {
      ++errors;
      std::printf("  oracle failed at %s P=%g wp=%g: %s\n", s.preset.c_str(), s.power, s.omega_p,
                  e.what());
    }
  }
  // exponent of the deviation in the probe strength at the two quoted points
  const std::vector<double> probes{0.2, 0.1, 0.05};
  std::string exps;
  bool exp_ok = true;
  for (const Point& p : {kK2, kK3}) {
    const TransmonSpec t = transmon();
    const ArraySpec a = ArraySpec::single(t);
    const DriveSpec d = DriveSpec::k_photon(t, p.order, std::sqrt(p.power));
    const double wp = t.omega10 + p.offset;
    const double ref = perturbative(a, d, wp);
    std::vector<double> dev;
    for (double op : probes) dev.push_back(std::abs(oracle(a, d, wp, op) - ref));
    const double k = slope(probes, dev);
    exp_ok = exp_ok && std::abs(k - 2.0) <= 0.3;
    exps += fmt(" %.2f", k);
  }
  verdict(6, errors == 0 && worst <= 1e-3 && exp_ok, seconds_since(t0), 120.0,
          fmt("20 points max|r_oracle-r_pert|=%.2e", worst) + ", exponents" + exps);
}

// --- identities -----------------------------------------------------------

Eigen::RowVectorXcd trace_row(Eigen::Index d) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) t(vec_index(i, i, d)) = 1.0;
  return t;
}

void criterion7() {
  const auto t0 = Clock::now();
  double trace_err = 0, herm_err = 0, min_eig = 0, unit_err = 0, basis_err = 0, amp_err = 0,
         diag_err = 0, n1_err = 0;
  for (int order : {1, 2, 3})
    for (double power : {0.1, 100.0, 5600.0})
      for (double gphi : {0.0, 0.014}) {
        TransmonSpec t = transmon(gphi);
        const ArraySpec a = ArraySpec::single(t);
        const DriveSpec d = DriveSpec::k_photon(t, order, std::sqrt(power));
        const RateTable rates = collective_rates(a);
        const Superoperator l0 = build_liouvillian0(a, d, rates);
        trace_err = std::max(trace_err, (trace_row(6) * l0.matrix()).cwiseAbs().maxCoeff());
        const DenseOperator rho0 = steady_state(l0).rho;
        herm_err = std::max(herm_err, (rho0 - rho0.adjoint()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho0 + rho0.adjoint()));
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        unit_err = std::max(unit_err, std::abs(rho0.trace() - 1.0));

        const DressedAnalysis an = analyze_drive(a, d, rates, rho0);
        const auto& u = an.basis.vectors;
        const Eigen::MatrixXcd tr = kron(u.transpose(), u.adjoint());
        for (double off : {-102.0, -12.1, 3.0}) {
          const double wp = t.omega10 + off;
          const Eigen::MatrixXcd expect =
              tr * (l0.matrix() + cplx(0.0, wp - d.omega_d) * Eigen::MatrixXcd::Identity(36, 36)) *
              tr.adjoint();
          basis_err = std::max(basis_err, (dressed_generator(an.basis, an.rates, wp) - expect)
                                                  .cwiseAbs()
                                                  .maxCoeff() /
                                              expect.cwiseAbs().maxCoeff());
          ProbeSpec p;
          p.omega_p = wp;
          const DenseOperator r1 =
              linear_response_rho1(l0, build_probe_superops(a, p).plus, rho0, wp - d.omega_d).rho1;
          const Eigen::MatrixXcd c = coefficient_C(an.basis, a, rates, wp);
          const cplx dressed = c.cwiseProduct(an.basis.to_dressed(r1).transpose()).sum();
          amp_err = std::max(amp_err, std::abs(dressed - (emission_operator(a, rates, wp) * r1).trace()));
        }
        n1_err = std::max(n1_err,
                          (l0.matrix() - build_single_atom_liouvillian0(t, d).matrix()).cwiseAbs().maxCoeff());
      }
  {
    ArraySpec a;
    for (double x : {0.0, 0.37e-3, 1.1e-3}) {
      TransmonSpec t = transmon();
      t.position = x;
      a.transmons.push_back(t);
    }
    const RateTable r = collective_rates(a);
    for (int n = 0; n < a.atoms(); ++n)
      for (int j = 1; j < a.levels(); ++j) {
        diag_err = std::max(diag_err, std::abs(r.collective_decay[j](n, n) - r.mirror_decay[n][j]));
        diag_err = std::max(diag_err, std::abs(r.lamb_shift[j](n, n) -
                                               0.25 * std::sin(2 * r.wavenumbers[j] * a.transmons[n].position)));
      }
  }
  // single-sideband prefactor along the 1-photon branch
  DriveSpec d;
  d.omega_d = TransmonSpec{}.omega10;
  int bad_prefactor = 0;
  for (const auto& b : branch_scan(ArraySpec::single(transmon()), d, logspace(10.0, 1e4, 50), 4, 5))
    if (!(b.prefactor.real() < 0.0) || std::abs(b.prefactor.imag()) > 1e-6 * std::abs(b.prefactor.real()))
      ++bad_prefactor;

  const bool ok = trace_err < 1e-10 && herm_err < 1e-10 && min_eig > -1e-10 && unit_err < 1e-10 &&
                  basis_err < 1e-10 && amp_err < 1e-10 && diag_err < 1e-12 && n1_err < 1e-9 &&
                  bad_prefactor == 0;
  verdict(7, ok, seconds_since(t0), 10.0,
          fmt("trace %.1e", trace_err) + fmt(" herm %.1e", herm_err) + fmt(" min eig %.1e", min_eig) +
              fmt(" basis %.1e", basis_err) + fmt(" amplitude %.1e", amp_err) +
              fmt(" diag %.1e", diag_err) + fmt(" N=1 %.1e", n1_err) +
              " prefactor violations " + std::to_string(bad_prefactor));
}

// --- two atoms ------------------------------------------------------------

// Damping rate of a coherence X under L0, with the residual of the eigen-relation.
double coherence_damping(const Superoperator& l0, const DenseOperator& x, double* residual) {
  const Eigen::VectorXcd v = vectorize(x);
  const Eigen::VectorXcd lv = l0.matrix() * v;
  const cplx lambda = v.dot(lv) / v.squaredNorm();
  *residual = (lv - lambda * v).norm() / v.norm();
  return -lambda.real();
}

void criterion8() {
  const auto t0 = Clock::now();
  TransmonSpec t = transmon();
  t.levels = 3;
  DriveSpec idle;
  idle.omega_d = t.omega10;

  const ArraySpec one = ArraySpec::single(t);
  const ArraySpec two({t, t});
  double res1 = 0, res2 = 0;
  const LadderOps ops1(3, 1);
  const double g1 = coherence_damping(build_liouvillian0(one, idle, collective_rates(one)),
                                      ops1.lowering(0, 1), &res1);
  // |00><S| with |S> = (|10> + |01>)/sqrt(2)
  DenseOperator sym = DenseOperator::Zero(9, 9);
  sym(0, 3) = sym(0, 1) = 1.0 / std::sqrt(2.0);
  const double g2 =
      coherence_damping(build_liouvillian0(two, idle, collective_rates(two)), sym, &res2);
  const double factor = g2 / g1;
  bool ok = std::abs(factor - 2.0) <= 1e-10 && res1 < 1e-10 && res2 < 1e-10;

  // co-located atoms have a dark antisymmetric sector; the relevant steady
  // state is the one reached from the ground state
  DenseOperator ground = DenseOperator::Zero(9, 9);
  ground(0, 0) = 1.0;
  double worst = 0.0;
  int errors = 0;
  std::mt19937_64 rng(77);
  const std::vector<double> powers = logspace(0.1, 1e4, 201);
  const std::vector<double> offsets = linspace(-150.0, 50.0, 201);
  for (int i = 0; i < 5; ++i) {
    double off = 0.0;
    while (std::abs(off) < 0.5) off = offsets[std::uniform_int_distribution<std::size_t>(0, 200)(rng)];
    DriveSpec d = idle;
    d.rabi = std::sqrt(powers[std::uniform_int_distribution<std::size_t>(0, 200)(rng)]);
    const double wp = t.omega10 + off;
    try {
      worst = std::max(worst, std::abs(oracle(two, d, wp, 1e-3) - perturbative(two, d, wp, ground)));
    } catch (const std::exception& e) {
      ++errors;
      std::printf("  N=2 oracle failed at P=%g wp=%g: %s\n", d.power(), wp, e.what());
    }
  }
  ok = ok && errors == 0 && worst <= 1e-3;
  verdict(8, ok, seconds_since(t0), 120.0,
          fmt("symmetric damping ratio %.12f", factor) + fmt(", N=2 oracle max dev %.2e", worst));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %zu: exception %s\n", i + 1, e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

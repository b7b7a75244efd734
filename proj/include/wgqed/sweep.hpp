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

// Grid evaluation of r over drive power and probe frequency, plus the two
// one-dimensional scans used by the presets (dressed branch, dephasing).

#include "wgqed/dressed.hpp"
#include "wgqed/model.hpp"
#include "wgqed/oracle.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

namespace wgqed {

enum class Model { full, reduced, decoupled, single, oracle };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

enum PointFlag : unsigned {
  kFlagNudged = 1u << 0,        ///< omega_p moved off omega_d
  kFlagDegenerate = 1u << 1,    ///< L0 null space not one-dimensional
  kFlagSolverError = 1u << 2,   ///< any other per-point failure; r is NaN
  kFlagNoSidebands = 1u << 3,   ///< dressed models with nothing within threshold
  kFlagNotComputed = 1u << 4,   ///< cancelled before evaluation
};

struct SpectrumPoint {
  double drive_power = 0.0;
  double omega_p = 0.0;  ///< as requested (before any nudge)
  double r = 0.0;
  unsigned flags = 0;
  std::string error;
  std::optional<SidebandReport> report;
};

struct SweepGrid {
  std::vector<double> drive_powers;  ///< Omega_d^2
  std::vector<double> omega_p;
};

struct SweepOptions {
  Model model = Model::full;
  int workers = 1;
  bool diagnostics = false;
  /// Reports are attached only where |r - 1| reaches this (keeps maps small).
  double diagnostics_min_deviation = 1e-3;
  double threshold = kDefaultSidebandThreshold;
  double probe_rabi = 1e-3;  ///< oracle model only
  OracleOptions oracle;
  const std::atomic<bool>* cancel = nullptr;
};

struct SpectrumResult {
  std::vector<double> drive_powers;
  std::vector<double> omega_p;
  std::vector<SpectrumPoint> points;  ///< row-major, one row per drive power
  bool complete = true;

  const SpectrumPoint& at(std::size_t drive, std::size_t probe) const {
    return points[drive * omega_p.size() + probe];
  }
};

/// drive.omega_d is kept; drive.rabi is replaced by sqrt(power) per row.
/// Rows are distributed over the workers; the result does not depend on the
/// worker count. Failing points are flagged, never thrown.
SpectrumResult sweep(const ArraySpec& array, const DriveSpec& drive, const SweepGrid& grid,
                     const SweepOptions& options = {});

struct BranchPoint {
  double drive_power = 0.0;
  double omega_p = 0.0;
  double r_full = 0.0;
  double r_reduced = 0.0;
  double r_decoupled = 0.0;
  double population_difference = 0.0;  ///< P^D_{nu mu}
  cplx prefactor;                      ///< 2 C Omega^D / Gamma^D
  SidebandReport report;
};

/// Follows the |D_nu, F+1> <-> |D_mu, F> resonance, omega_p = omega_d + e_nu - e_mu,
/// across drive powers.
std::vector<BranchPoint> branch_scan(const ArraySpec& array, const DriveSpec& drive,
                                     const std::vector<double>& drive_powers, int mu, int nu,
                                     double threshold = kDefaultSidebandThreshold,
                                     int workers = 1);

struct DephasingPoint {
  double gamma_phi = 0.0;
  double r = 0.0;
};

/// r at a fixed point for each scalar dephasing rate, spread over the ladder
/// with the given profile (applied to every transmon).
std::vector<DephasingPoint> dephasing_scan(const ArraySpec& array, const DriveSpec& drive,
                                           double omega_p, const std::vector<double>& rates,
                                           DephasingProfile profile, Model model = Model::full,
                                           double threshold = kDefaultSidebandThreshold);

/// One point, any model; throws on failure.
double evaluate_point(const ArraySpec& array, const DriveSpec& drive, double omega_p,
                      Model model, double threshold = kDefaultSidebandThreshold,
                      double probe_rabi = 1e-3, const OracleOptions& oracle = {});

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  ///< endpoints given as values

}  // namespace wgqed

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

// Brute-force check of the weak-probe expansion: integrate the master equation
// with the oscillating probe term kept explicitly, then read r off the
// component of the emitted field at the probe frequency.

#include "wgqed/model.hpp"
#include "wgqed/operators.hpp"

#include <ostream>
#include <vector>

namespace wgqed {

enum class InitialState { ground, maximally_mixed, steady };

struct OracleOptions {
  double transient = 30.0;      ///< settling time before the windows [1/gamma10]
  int window_periods = 20;      ///< beat periods per demodulation window
  double dc_window = 20.0;      ///< window length when omega_p == omega_d
  double max_window = 400.0;    ///< longest acceptable window; fewer periods are used above it
  double dt = 0.0;              ///< 0 picks min(1e-3, 0.05/Omega_d, 0.05/|Delta|)
  int samples_per_period = 64;  ///< stored states per beat period
  InitialState initial = InitialState::ground;  ///< ignored in DC mode, which starts from rho0
  double settle_tolerance = 1e-4;  ///< relative drift allowed between the last two windows
};

struct Trajectory {
  std::vector<double> times;          ///< sample times of the stored states
  std::vector<DenseOperator> states;  ///< two consecutive windows, evenly sampled
  double dt = 0.0;
  double detuning = 0.0;       ///< omega_p - omega_d
  double probe_rabi = 0.0;
  double period = 0.0;         ///< beat period, 0 in DC mode
  int window_periods = 0;
  int samples_per_window = 0;  ///< states[0..n) first window, [n..2n) last window
  bool dc_mode = false;
  DenseOperator rho0;          ///< steady state without the probe; DC mode or steady start only
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
};

/// Fixed-step RK4 of drho/dt = L0 rho + Omega_p (S+ e^{-i Delta t} + S- e^{i Delta t}) rho
/// with Delta = omega_p - omega_d.
Trajectory integrate_time_domain(const ArraySpec& array, const DriveSpec& drive,
                                 const ProbeSpec& probe, const OracleOptions& options = {});

struct OracleResult {
  double r = 1.0;
  cplx projection;          ///< Tr(A rho) component at e^{-i Delta t}, per unit Omega_p
  double settle_drift = 0.0;
};

/// Projection over the last window; throws NonConvergence if it moved by more
/// than the tolerance relative to the previous window.
OracleResult demodulate_reflection(const Trajectory& traj, const ArraySpec& array,
                                   const RateTable& rates, double omega_p,
                                   double settle_tolerance = 1e-4);

/// integrate + demodulate.
OracleResult oracle_reflection(const ArraySpec& array, const DriveSpec& drive,
                               const ProbeSpec& probe, const OracleOptions& options = {});

/// Columns: t, trace, then Re/Im of the superdiagonal rho(k-1, k).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace wgqed

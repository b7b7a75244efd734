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

// Zeroth- and first-order steady state of the weak-probe expansion
//   rho(t) ~ rho0 + (Omega_p / gamma10) rho1 e^{-i (omega_p - omega_d) t}
// and the reflection amplitude it implies.

#include <optional>

#include "wgqed/model.hpp"
#include "wgqed/operators.hpp"

namespace wgqed {

/// Offset applied to probe points that coincide with the drive carrier.
inline constexpr double kZeroDetuningNudge = 1e-6;

struct SteadyState {
  DenseOperator rho;
  double residual = 0.0;  ///< ||L0[rho]||
};

struct SteadyStateOptions {
  bool check_degeneracy = true;
  double degeneracy_tolerance = 1e-8;  ///< relative to the largest singular value
  // With a degenerate null space, return the long-time limit reached from this
  // state instead of throwing.
  std::optional<DenseOperator> reference;
};

/// Unit-trace null vector of L0 from the bordered system (one population row
/// replaced by the trace functional). Throws DegenerateSteadyState.
SteadyState steady_state(const Superoperator& l0, const SteadyStateOptions& options = {});

struct LinearResponse {
  DenseOperator rho1;
  double detuning = 0.0;  ///< omega_p - omega_d
  double residual = 0.0;
};

/// Solves (L0 + i detuning) rho1 = -gamma10 S+[rho0].
LinearResponse linear_response_rho1(const Superoperator& l0, const Superoperator& s_plus,
                                    const DenseOperator& rho0, double detuning,
                                    double gamma10 = 1.0);

/// A = sum_{n,j} (gamma~_j(x_n) / gamma10) sigma^n_{j-1,j}, the atomic part of
/// the outgoing probe field.
DenseOperator emission_operator(const ArraySpec& array, const RateTable& rates, double omega_p);

/// 1 + 2i Tr(A rho1); its modulus is r.
cplx reflection_amplitude(const DenseOperator& rho1, const ArraySpec& array,
                          const RateTable& rates, double omega_p);

double reflection(const DenseOperator& rho1, const ArraySpec& array, const RateTable& rates,
                  double omega_p);

/// Moves omega_p off omega_d by kZeroDetuningNudge when they coincide.
double nudge_probe(double omega_p, double omega_d, bool* nudged = nullptr);

/// One-shot full-model reflection for a single (drive, probe) point.
double full_model_reflection(const ArraySpec& array, const DriveSpec& drive,
                             const ProbeSpec& probe);

}  // namespace wgqed

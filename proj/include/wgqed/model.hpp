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

// Physical description of a driven transmon (array) at a mirror-terminated
// waveguide. All quantities are in units of gamma10 (frequencies in
// rad * gamma10, positions in v_g / gamma10, v_g = 1).

#include <Eigen/Dense>

#include <vector>

namespace wgqed {

inline constexpr double kGroupVelocity = 1.0;

/// How a scalar pure-dephasing rate is spread over the transmon ladder.
enum class DephasingProfile {
  uniform,    ///< gamma_phi_j = gamma_phi for j >= 1
  quadratic,  ///< gamma_phi_j = j^2 gamma_phi (|0><j| dephases at j^2 gamma_phi)
};

struct TransmonSpec {
  int levels = 6;
  double omega10 = 2100.0;
  double anharmonicity = 100.0;
  double gamma10 = 1.0;
  double position = 0.0;
  /// Per-level pure dephasing rates, index j = 0..levels-1. Empty means none.
  std::vector<double> dephasing;
  /// Bare decay per transition j -> j-1 for j = 1..levels-1 (size levels-1).
  /// Empty means gamma10 for every transition.
  std::vector<double> bare_decay;

  void validate() const;
};

struct DriveSpec {
  double omega_d = 2100.0;
  double rabi = 0.0;  ///< Omega_d
  int pump_order = 1; ///< K, informational once omega_d is set

  double power() const { return rabi * rabi; }

  /// Drive tuned to the K pump-photon resonance omega_d = (omega_K - omega_0) / K.
  static DriveSpec k_photon(const TransmonSpec& t, int order, double rabi);
  void validate() const;
};

struct ProbeSpec {
  double omega_p = 2100.0;
  double rabi = 1e-3;  ///< Omega_p; only the time-domain oracle uses it

  void validate() const;
};

struct ArraySpec {
  std::vector<TransmonSpec> transmons;

  ArraySpec() = default;
  explicit ArraySpec(std::vector<TransmonSpec> t) : transmons(std::move(t)) {}
  static ArraySpec single(TransmonSpec t) { return ArraySpec({std::move(t)}); }

  int atoms() const { return static_cast<int>(transmons.size()); }
  int levels() const { return transmons.front().levels; }
  const TransmonSpec& front() const { return transmons.front(); }
  void validate() const;
};

/// Scalar rate coefficients. Per-transition vectors are indexed by the upper
/// level j of the j -> j-1 transition; entry 0 is unused and zero.
struct RateTable {
  int levels = 0;
  int atoms = 0;
  std::vector<double> transition_frequency;      ///< omega_{j,j-1}
  std::vector<double> wavenumbers;               ///< k_{j,j-1}
  std::vector<std::vector<double>> bare_decay;   ///< [n][j]
  std::vector<std::vector<double>> mirror_decay; ///< [n][j]
  std::vector<Eigen::MatrixXd> collective_decay; ///< [j](n, m)
  std::vector<Eigen::MatrixXd> lamb_shift;       ///< [j](n, m)
};

/// omega_j = j omega10 - j(j-1) alpha / 2. Throws InvalidSpec if not increasing.
std::vector<double> build_levels(const TransmonSpec& spec);

/// Bare rates gamma0_{j,j-1}, index j (entry 0 unused).
std::vector<double> bare_decay_rates(const TransmonSpec& spec);

/// Mirror-modified rates gamma_{j,j-1}(x) = gamma0 cos^2(k_{j,j-1} x).
std::vector<double> decay_rates(const TransmonSpec& spec);

RateTable collective_rates(const ArraySpec& array);

std::vector<double> dephasing_rates(int levels, double rate, DephasingProfile profile);

struct CutoffCheck {
  double top_population = 0.0;
  bool passed = true;
};

/// Population of the highest kept level (max over atoms) against a tolerance.
CutoffCheck validate_cutoff(const Eigen::MatrixXcd& rho0, int levels, int atoms,
                            double tolerance);

}  // namespace wgqed

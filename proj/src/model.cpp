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

#include "wgqed/model.hpp"

#include "wgqed/errors.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace wgqed {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidSpec(message);
}

}  // namespace

void TransmonSpec::validate() const {
  require(levels >= 2, "transmon needs at least 2 levels");
  require(gamma10 > 0.0, "gamma10 must be positive");
  require(anharmonicity >= 0.0, "anharmonicity must be nonnegative");
  require(position >= 0.0, "position must be nonnegative");
  require(omega10 > (levels - 1) * anharmonicity,
          "omega10 must exceed (levels-1)*anharmonicity");
  require(dephasing.empty() || static_cast<int>(dephasing.size()) == levels,
          "dephasing needs one rate per level");
  for (double g : dephasing) require(g >= 0.0, "dephasing rates must be nonnegative");
  require(bare_decay.empty() || static_cast<int>(bare_decay.size()) == levels - 1,
          "bare_decay needs one rate per transition");
  for (double g : bare_decay) require(g >= 0.0, "decay rates must be nonnegative");
}

DriveSpec DriveSpec::k_photon(const TransmonSpec& t, int order, double rabi) {
  require(order >= 1 && order < t.levels, "pump order must lie in [1, levels-1]");
  const auto w = build_levels(t);
  DriveSpec d;
  d.omega_d = (w[order] - w[0]) / order;
  d.rabi = rabi;
  d.pump_order = order;
  return d;
}

void DriveSpec::validate() const {
  require(omega_d > 0.0, "drive frequency must be positive");
  require(rabi >= 0.0, "drive Rabi frequency must be nonnegative");
  require(pump_order >= 1, "pump order must be >= 1");
}

void ProbeSpec::validate() const {
  require(omega_p > 0.0, "probe frequency must be positive");
  require(rabi >= 0.0, "probe Rabi frequency must be nonnegative");
}

void ArraySpec::validate() const {
  require(!transmons.empty(), "array needs at least one transmon");
  const auto& ref = transmons.front();
  double last_x = 0.0;
  for (std::size_t n = 0; n < transmons.size(); ++n) {
    const auto& t = transmons[n];
    t.validate();
    require(t.levels == ref.levels && t.omega10 == ref.omega10 &&
                t.anharmonicity == ref.anharmonicity && t.gamma10 == ref.gamma10,
            "array members must share levels, omega10, anharmonicity and gamma10");
    require(n == 0 || t.position >= last_x, "positions must be nondecreasing");
    last_x = t.position;
  }
}

std::vector<double> build_levels(const TransmonSpec& spec) {
  require(spec.levels >= 2, "transmon needs at least 2 levels");
  std::vector<double> w(spec.levels);
  for (int j = 0; j < spec.levels; ++j) {
    w[j] = j * spec.omega10 - 0.5 * j * (j - 1) * spec.anharmonicity;
    require(j == 0 || w[j] > w[j - 1], "level ladder is not increasing");
  }
  return w;
}

std::vector<double> bare_decay_rates(const TransmonSpec& spec) {
  std::vector<double> g(spec.levels, 0.0);
  for (int j = 1; j < spec.levels; ++j)
    g[j] = spec.bare_decay.empty() ? spec.gamma10 : spec.bare_decay[j - 1];
  return g;
}

std::vector<double> decay_rates(const TransmonSpec& spec) {
  const auto w = build_levels(spec);
  auto g = bare_decay_rates(spec);
  for (int j = 1; j < spec.levels; ++j) {
    const double c = std::cos((w[j] - w[j - 1]) / kGroupVelocity * spec.position);
    g[j] *= c * c;
  }
  return g;
}

RateTable collective_rates(const ArraySpec& array) {
  array.validate();
  const int J = array.levels();
  const int N = array.atoms();
  const auto w = build_levels(array.front());

  RateTable t;
  t.levels = J;
  t.atoms = N;
  t.transition_frequency.assign(J, 0.0);
  t.wavenumbers.assign(J, 0.0);
  for (int j = 1; j < J; ++j) {
    t.transition_frequency[j] = w[j] - w[j - 1];
    t.wavenumbers[j] = t.transition_frequency[j] / kGroupVelocity;
  }
  for (const auto& tr : array.transmons) {
    t.bare_decay.push_back(bare_decay_rates(tr));
    t.mirror_decay.push_back(decay_rates(tr));
  }

  t.collective_decay.assign(J, Eigen::MatrixXd::Zero(N, N));
  t.lamb_shift.assign(J, Eigen::MatrixXd::Zero(N, N));
  for (int j = 1; j < J; ++j) {
    const double k = t.wavenumbers[j];
    for (int n = 0; n < N; ++n) {
      for (int m = 0; m < N; ++m) {
        const double xn = array.transmons[n].position;
        const double xm = array.transmons[m].position;
        const std::complex<double> bracket =
            std::polar(1.0, k * (xn + xm)) + std::polar(1.0, k * std::abs(xn - xm));
        // The pair rate uses the geometric mean so the diagonal reduces to the
        // single-atom rate even with per-atom overrides.
        const double g0 = std::sqrt(t.bare_decay[n][j] * t.bare_decay[m][j]);
        t.collective_decay[j](n, m) = 0.5 * g0 * bracket.real();
        t.lamb_shift[j](n, m) = 0.25 * g0 * bracket.imag();
      }
    }
  }
  return t;
}

std::vector<double> dephasing_rates(int levels, double rate, DephasingProfile profile) {
  std::vector<double> g(levels, 0.0);
  for (int j = 1; j < levels; ++j)
    g[j] = profile == DephasingProfile::uniform ? rate : static_cast<double>(j) * j * rate;
  return g;
}

CutoffCheck validate_cutoff(const Eigen::MatrixXcd& rho0, int levels, int atoms,
                            double tolerance) {
  CutoffCheck out;
  const Eigen::Index dim = rho0.rows();
  for (int n = 0; n < atoms; ++n) {
    Eigen::Index stride = 1;
    for (int m = n + 1; m < atoms; ++m) stride *= levels;
    double p = 0.0;
    for (Eigen::Index s = 0; s < dim; ++s)
      if ((s / stride) % levels == levels - 1) p += rho0(s, s).real();
    out.top_population = std::max(out.top_population, p);
  }
  out.passed = out.top_population <= tolerance;
  return out;
}

}  // namespace wgqed

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

#include "wgqed/oracle.hpp"

#include "wgqed/errors.hpp"
#include "wgqed/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wgqed {

namespace {

DenseOperator initial_state(InitialState kind, Eigen::Index d, const DenseOperator& rho0) {
  switch (kind) {
    case InitialState::ground: {
      DenseOperator g = DenseOperator::Zero(d, d);
      g(0, 0) = 1.0;
      return g;
    }
    case InitialState::maximally_mixed:
      return DenseOperator::Identity(d, d) / static_cast<double>(d);
    case InitialState::steady:
      return rho0;
  }
  return rho0;
}

}  // namespace

Trajectory integrate_time_domain(const ArraySpec& array, const DriveSpec& drive,
                                 const ProbeSpec& probe, const OracleOptions& options) {
  if (!(probe.rabi > 0.0)) throw InvalidSpec("oracle needs a positive probe Rabi frequency");
  if (options.window_periods < 1 || options.samples_per_period < 1 || options.transient < 0.0)
    throw InvalidSpec("bad oracle options");

  const RateTable rates = collective_rates(array);
  const Superoperator l0 = build_liouvillian0(array, drive, rates);
  const ProbeGenerators gen = build_probe_superops(array, probe);
  const Eigen::Index d = l0.hilbert_dim();

  Trajectory tr;
  tr.detuning = probe.omega_p - drive.omega_d;
  tr.probe_rabi = probe.rabi;
  tr.dc_mode = tr.detuning == 0.0;
  // only needed as a start or as the DC reference
  if (tr.dc_mode || options.initial == InitialState::steady) tr.rho0 = steady_state(l0).rho;

  double dt_max = options.dt > 0.0 ? options.dt : 1e-3;
  if (options.dt <= 0.0) {
    if (drive.rabi != 0.0) dt_max = std::min(dt_max, 0.05 / std::abs(drive.rabi));
    if (!tr.dc_mode) dt_max = std::min(dt_max, 0.05 / std::abs(tr.detuning));
  }

  // Every stored sample lands on a step; windows hold whole beat periods.
  long steps_per_sample = 0;
  long samples = 0;
  if (tr.dc_mode) {
    samples = static_cast<long>(options.samples_per_period) * options.window_periods;
    steps_per_sample = std::max(1L, static_cast<long>(std::ceil(options.dc_window / samples / dt_max)));
    tr.dt = options.dc_window / static_cast<double>(samples * steps_per_sample);
    tr.window_periods = 0;
  } else {
    tr.period = 2.0 * std::numbers::pi / std::abs(tr.detuning);
    const int periods =
        std::min<long>(options.window_periods, static_cast<long>(options.max_window / tr.period));
    if (periods < 1) throw WindowMismatch("beat period exceeds the maximum demodulation window");
    tr.window_periods = periods;
    steps_per_sample = std::max(
        1L, static_cast<long>(std::ceil(tr.period / options.samples_per_period / dt_max)));
    tr.dt = tr.period / static_cast<double>(options.samples_per_period * steps_per_sample);
    samples = static_cast<long>(options.samples_per_period) * periods;
  }
  tr.samples_per_window = static_cast<int>(samples);

  const long transient_steps = static_cast<long>(std::ceil(options.transient / tr.dt));
  const long total_steps = transient_steps + 2 * samples * steps_per_sample;

  const Eigen::MatrixXcd& L = l0.matrix();
  const Eigen::MatrixXcd P = probe.rabi * gen.plus.matrix();
  const Eigen::MatrixXcd M = probe.rabi * gen.minus.matrix();
  const double w = tr.detuning;
  auto rhs = [&](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    const cplx e = std::polar(1.0, -w * t);
    return L * y + e * (P * y) + std::conj(e) * (M * y);
  };

  // In DC mode a decaying transient would add straight into the shift.
  Eigen::VectorXcd y = vectorize(tr.dc_mode ? tr.rho0 : initial_state(options.initial, d, tr.rho0));
  tr.times.reserve(2 * samples);
  tr.states.reserve(2 * samples);
  const double h = tr.dt;
  for (long n = 0; n < total_steps; ++n) {
    const double t = n * h;
    const Eigen::VectorXcd k1 = rhs(t, y);
    const Eigen::VectorXcd k2 = rhs(t + h / 2, y + (h / 2) * k1);
    const Eigen::VectorXcd k3 = rhs(t + h / 2, y + (h / 2) * k2);
    const Eigen::VectorXcd k4 = rhs(t + h, y + h * k3);
    y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const long after = n + 1 - transient_steps;
    if (after > 0 && after % steps_per_sample == 0) {
      DenseOperator rho = unvectorize(y, d);
      tr.max_trace_error = std::max(tr.max_trace_error, std::abs(rho.trace() - 1.0));
      tr.max_hermiticity_error =
          std::max(tr.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
      tr.times.push_back((n + 1) * h);
      tr.states.push_back(std::move(rho));
    }
  }
  return tr;
}

OracleResult demodulate_reflection(const Trajectory& traj, const ArraySpec& array,
                                   const RateTable& rates, double omega_p,
                                   double settle_tolerance) {
  const long n = traj.samples_per_window;
  if (n < 1 || static_cast<long>(traj.states.size()) != 2 * n)
    throw WindowMismatch("trajectory does not hold two full windows");

  const DenseOperator a = emission_operator(array, rates, omega_p);
  auto window = [&](long first) {
    cplx acc = 0.0;
    for (long s = first; s < first + n; ++s) {
      cplx v = (a * traj.states[s]).trace();
      if (traj.dc_mode)
        v -= (a * traj.rho0).trace();
      else
        v *= std::polar(1.0, traj.detuning * traj.times[s]);
      acc += v;
    }
    return acc / (static_cast<double>(n) * traj.probe_rabi);
  };

  OracleResult out;
  const cplx previous = window(0);
  out.projection = window(n);
  const double scale = std::max(std::abs(out.projection), 1e-12);
  out.settle_drift = std::abs(out.projection - previous) / scale;
  if (out.settle_drift > settle_tolerance)
    throw NonConvergence("demodulated amplitude has not settled (relative drift " +
                         std::to_string(out.settle_drift) + ")");
  out.r = std::abs(1.0 + cplx(0.0, 2.0) * out.projection);
  return out;
}

OracleResult oracle_reflection(const ArraySpec& array, const DriveSpec& drive,
                               const ProbeSpec& probe, const OracleOptions& options) {
  const Trajectory tr = integrate_time_domain(array, drive, probe, options);
  return demodulate_reflection(tr, array, collective_rates(array), probe.omega_p,
                               options.settle_tolerance);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  char buf[64];
  out << "t,trace";
  const Eigen::Index d = traj.states.empty() ? 0 : traj.states.front().rows();
  for (Eigen::Index k = 1; k < d; ++k)
    out << ",re_rho_" << k - 1 << '_' << k << ",im_rho_" << k - 1 << '_' << k;
  out << '\n';
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const auto& rho = traj.states[s];
    std::snprintf(buf, sizeof buf, "%.15g,%.15g", traj.times[s], rho.trace().real());
    out << buf;
    for (Eigen::Index k = 1; k < d; ++k) {
      std::snprintf(buf, sizeof buf, ",%.15g,%.15g", rho(k - 1, k).real(), rho(k - 1, k).imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace wgqed

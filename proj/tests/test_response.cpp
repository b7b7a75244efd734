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

#include "common.hpp"

#include "wgqed/errors.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/response.hpp"

#include <numbers>

using namespace wgqed;
using namespace wgqed::testing;

namespace {

struct Point {
  ArraySpec array;
  DriveSpec drive;
  RateTable rates;
  Superoperator l0;
  DenseOperator rho0;

  Point(const TransmonSpec& t, const DriveSpec& d)
      : array(ArraySpec::single(t)), drive(d), rates(collective_rates(array)) {
    l0 = build_liouvillian0(array, drive, rates);
    rho0 = steady_state(l0).rho;
  }

  LinearResponse rho1(double omega_p) const {
    ProbeSpec p;
    p.omega_p = omega_p;
    return linear_response_rho1(l0, build_probe_superops(array, p).plus, rho0,
                                omega_p - drive.omega_d);
  }
};

}  // namespace

TEST_CASE("steady state is a unit-trace positive Hermitian matrix") {
  const TransmonSpec t = canonical();
  for (double power : {0.1, 100.0, 1e3, 1e4}) {
    DriveSpec d;
    d.rabi = std::sqrt(power);
    const Point p(t, d);
    CHECK(std::abs(p.rho0.trace() - 1.0) < 1e-12);
    CHECK(max_abs(p.rho0 - p.rho0.adjoint()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.rho0);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("steady state agrees with the long-time limit of the integrator") {
  DriveSpec d;
  d.rabi = std::sqrt(1e3);
  const Point p(canonical(), d);
  ProbeSpec probe;
  probe.omega_p = 1000.0;  // far away and vanishing
  probe.rabi = 1e-12;
  OracleOptions o;
  o.transient = 40.0;
  o.window_periods = 1;
  const Trajectory tr = integrate_time_domain(p.array, d, probe, o);
  CHECK(max_abs(tr.states.back() - p.rho0) < 1e-6);
}

TEST_CASE("degenerate null space is reported") {
  TransmonSpec t = canonical();
  t.bare_decay.assign(t.levels - 1, 0.0);
  DriveSpec d;
  d.omega_d = 2050.0;
  const ArraySpec a = ArraySpec::single(t);
  CHECK_THROWS_AS(steady_state(build_liouvillian0(a, d, collective_rates(a))),
                  DegenerateSteadyState);
}

TEST_CASE("co-located atoms settle into the sector of the reference state") {
  TransmonSpec t = canonical();
  t.levels = 3;
  const ArraySpec a({t, t});
  const DriveSpec d = DriveSpec::k_photon(t, 1, 2.0);
  const auto l0 = build_liouvillian0(a, d, collective_rates(a));
  CHECK_THROWS_AS(steady_state(l0), DegenerateSteadyState);
  SteadyStateOptions opt;
  opt.reference = DenseOperator::Zero(9, 9);
  (*opt.reference)(0, 0) = 1.0;
  const auto ss = steady_state(l0, opt);
  CHECK(ss.residual < 1e-10);
  CHECK(std::abs(ss.rho.trace() - 1.0) < 1e-10);
  // the singlet |01> - |10> is never reached from the ground state
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(9);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(3) = -1.0 / std::sqrt(2.0);
  CHECK(std::abs(singlet.dot(ss.rho * singlet)) < 1e-10);
}

TEST_CASE("weak-probe susceptibility of an undriven two-level atom") {
  const TransmonSpec t = two_level();
  DriveSpec d;
  d.omega_d = 2000.0;  // carrier only sets the frame
  const Point p(t, d);
  for (double delta : {-3.0, -0.5, 0.0, 0.7, 2.0}) {
    const double wp = t.omega10 + delta;
    const auto lr = p.rho1(wp);
    // sigma01 = |0><1|; Tr(sigma01 rho1) = rho1(1, 0)
    const cplx expect = cplx(0.0, 0.5) / cplx(0.5, -delta);
    CHECK(std::abs(lr.rho1(1, 0) - expect) < 1e-10);
  }
}

TEST_CASE("an undriven lossless atom reflects everything at resonance") {
  const TransmonSpec t = two_level();
  DriveSpec d;
  d.omega_d = 2000.0;
  const Point p(t, d);
  const auto lr = p.rho1(t.omega10);
  CHECK(reflection(lr.rho1, p.array, p.rates, t.omega10) == doctest::Approx(1.0).epsilon(1e-12));
  // off resonance the sqrt(omega_p / omega10) factor leaves a small excess
  for (double delta : {-5.0, 1.0}) {
    const double r = reflection(p.rho1(t.omega10 + delta).rho1, p.array, p.rates, t.omega10 + delta);
    CHECK(std::abs(r - 1.0) < 5e-3);
  }
}

TEST_CASE("reflection is independent of the probe strength") {
  TransmonSpec t = canonical();
  const DriveSpec d = DriveSpec::k_photon(t, 2, 10.0);
  ProbeSpec a, b;
  a.omega_p = b.omega_p = 1998.0;
  a.rabi = 1e-3;
  b.rabi = 0.7;
  CHECK(full_model_reflection(ArraySpec::single(t), d, a) ==
        full_model_reflection(ArraySpec::single(t), d, b));
}

TEST_CASE("an atom close to a node barely reflects off resonance") {
  TransmonSpec t = two_level();
  DriveSpec d;
  d.rabi = 5.0;
  ProbeSpec p;
  p.omega_p = t.omega10 + 5.0;
  double last = 1.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    t.position = (std::numbers::pi / 2.0 - eps) / t.omega10;
    const double dev = std::abs(full_model_reflection(ArraySpec::single(t), d, p) - 1.0);
    CHECK(dev < last);
    last = dev;
  }
  CHECK(last < 1e-4);
}

TEST_CASE("conjugate partner problem") {
  const TransmonSpec t = canonical();
  const DriveSpec d = DriveSpec::k_photon(t, 3, std::sqrt(5600.0));
  const Point p(t, d);
  ProbeSpec probe;
  probe.omega_p = t.omega10 - 12.1;
  const auto g = build_probe_superops(p.array, probe);
  const double delta = probe.omega_p - d.omega_d;
  const auto plus = linear_response_rho1(p.l0, g.plus, p.rho0, delta);
  const auto minus = linear_response_rho1(p.l0, g.minus, p.rho0, -delta);
  CHECK(max_abs(plus.rho1.adjoint() - minus.rho1) < 1e-9);
}

TEST_CASE("probe on the carrier") {
  const TransmonSpec t = canonical();
  DriveSpec d;
  d.rabi = 10.0;
  const Point p(t, d);
  ProbeSpec probe;
  probe.omega_p = d.omega_d;
  const auto g = build_probe_superops(p.array, probe);
  CHECK_THROWS_AS(linear_response_rho1(p.l0, g.plus, p.rho0, 0.0), SingularAtZeroDetuning);
  bool nudged = false;
  const double w = nudge_probe(d.omega_d, d.omega_d, &nudged);
  CHECK(nudged);
  CHECK(w == d.omega_d + kZeroDetuningNudge);
  CHECK(std::isfinite(full_model_reflection(p.array, d, probe)));
}

TEST_CASE("quoted K=2 and K=3 points") {
  const TransmonSpec t = canonical();
  ProbeSpec p;
  p.omega_p = t.omega10 - 102.0;
  CHECK(full_model_reflection(ArraySpec::single(t), DriveSpec::k_photon(t, 2, 10.0), p) ==
        doctest::Approx(1.0963).epsilon(1e-4));
  p.omega_p = t.omega10 - 12.1;
  CHECK(full_model_reflection(ArraySpec::single(t), DriveSpec::k_photon(t, 3, std::sqrt(5600.0)),
                              p) == doctest::Approx(1.2215).epsilon(1e-4));
}

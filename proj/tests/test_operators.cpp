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
#include "wgqed/operators.hpp"
#include "wgqed/response.hpp"

using namespace wgqed;
using namespace wgqed::testing;

namespace {

Eigen::MatrixXcd random_op(Eigen::Index d, unsigned seed) {
  std::srand(seed);
  return Eigen::MatrixXcd::Random(d, d);
}

// Sum over the population rows: the row vector that maps vec(rho) -> Tr(rho).
Eigen::RowVectorXcd trace_functional(Eigen::Index d) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) t(vec_index(i, i, d)) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("column-major vectorization of products") {
  const auto a = random_op(4, 1), b = random_op(4, 2), rho = random_op(4, 3);
  CHECK(max_abs(sandwich(a, b).apply(rho) - a * rho * b) < 1e-12);
  CHECK(max_abs(left_multiply(a).apply(rho) - a * rho) < 1e-12);
  CHECK(max_abs(right_multiply(b).apply(rho) - rho * b) < 1e-12);
  CHECK(max_abs(commutator(a).apply(rho) - (a * rho - rho * a)) < 1e-12);
  CHECK(max_abs(unvectorize(vectorize(rho), 4) - rho) == 0.0);
}

TEST_CASE("ladder operators on a two-atom product space") {
  const LadderOps ops(3, 2);
  CHECK(ops.dim() == 9);
  // atom 0 is the most significant factor
  const auto s = ops.sigma(0, 1, 0);
  CHECK(s(3, 0) == cplx(1.0));
  CHECK(s(4, 1) == cplx(1.0));
  CHECK(max_abs(ops.lowering(1, 2) - ops.raising(1, 2).adjoint()) == 0.0);
  CHECK_THROWS_AS(LadderOps(6, 4), DimensionOverflow);
}

TEST_CASE("L0 preserves trace and Hermiticity") {
  for (int order : {1, 2, 3}) {
    TransmonSpec t = canonical();
    t.dephasing = dephasing_rates(t.levels, 0.02, DephasingProfile::quadratic);
    t.position = 0.3e-3;
    const ArraySpec a = ArraySpec::single(t);
    const auto l0 = build_liouvillian0(a, DriveSpec::k_photon(t, order, 30.0), collective_rates(a));
    CHECK((trace_functional(6) * l0.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd rho = random_op(6, 7);
    const Eigen::MatrixXcd h = rho + rho.adjoint();
    const Eigen::MatrixXcd out = l0.apply(h);
    CHECK(max_abs(out - out.adjoint()) < 1e-9);
  }
}

TEST_CASE("array generator reduces to the single-atom generator for N=1") {
  TransmonSpec t = canonical();
  t.dephasing = dephasing_rates(t.levels, 0.014, DephasingProfile::quadratic);
  for (double power : {0.0, 100.0, 5600.0}) {
    const DriveSpec d = DriveSpec::k_photon(t, 2, std::sqrt(power));
    const ArraySpec a = ArraySpec::single(t);
    const auto general = build_liouvillian0(a, d, collective_rates(a));
    const auto literal = build_single_atom_liouvillian0(t, d);
    CHECK(max_abs(general.matrix() - literal.matrix()) < 1e-9);
  }
}

TEST_CASE("driven two-level steady state") {
  const TransmonSpec t = two_level();
  for (double omega : {0.3, 1.0, 4.0}) {
    DriveSpec d;
    d.omega_d = t.omega10;
    d.rabi = omega;
    const ArraySpec a = ArraySpec::single(t);
    const auto ss = steady_state(build_liouvillian0(a, d, collective_rates(a)));
    const double expect = (omega * omega / 4) / (0.25 + omega * omega / 2);
    CHECK(ss.rho(1, 1).real() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(ss.residual < 1e-10);
  }
}

TEST_CASE("without couplings only the bare rotation is left") {
  TransmonSpec t = canonical();
  t.bare_decay.assign(t.levels - 1, 0.0);
  DriveSpec d;
  d.omega_d = 2050.0;
  const ArraySpec a = ArraySpec::single(t);
  const auto l0 = build_liouvillian0(a, d, collective_rates(a));
  Eigen::MatrixXcd expect = commutator(rotating_frame_hamiltonian(a, d)).matrix();
  expect *= cplx(0.0, -1.0);
  CHECK(max_abs(l0.matrix() - expect) < 1e-12);
  // diagonal states stay put
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(6, 6);
  rho(2, 2) = 1.0;
  CHECK(max_abs(l0.apply(rho)) < 1e-12);
}

TEST_CASE("probe generators are Hermitian partners") {
  const ArraySpec a = ArraySpec::single(canonical());
  ProbeSpec p;
  p.omega_p = 2000.0;
  const auto g = build_probe_superops(a, p);
  const auto rho = random_op(6, 11);
  const Eigen::MatrixXcd h = rho + rho.adjoint();
  // (S+ h)^dagger = S- h for Hermitian h
  CHECK(max_abs(g.plus.apply(h).adjoint() - g.minus.apply(h)) < 1e-12);
}

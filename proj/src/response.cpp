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

#include "wgqed/response.hpp"

#include "wgqed/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace wgqed {

SteadyState steady_state(const Superoperator& l0, const SteadyStateOptions& options) {
  const Eigen::Index d = l0.hilbert_dim();
  const Eigen::Index n = l0.dim();

  if (options.check_degeneracy) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(l0.matrix());
    const auto& sv = svd.singularValues();
    const double cutoff = options.degeneracy_tolerance * sv(0);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) <= cutoff) ++null_dim;
    if (null_dim > 1 && options.reference) {
      // spectral projector onto the null space applied to the reference
      Eigen::BDCSVD<Eigen::MatrixXcd> full(l0.matrix(), Eigen::ComputeFullV);
      Eigen::BDCSVD<Eigen::MatrixXcd> adj(l0.matrix().adjoint(), Eigen::ComputeFullV);
      const Eigen::MatrixXcd right = full.matrixV().rightCols(null_dim);
      const Eigen::MatrixXcd left = adj.matrixV().rightCols(null_dim);
      const Eigen::MatrixXcd overlap = left.adjoint() * right;
      const Eigen::VectorXcd v =
          right * overlap.fullPivLu().solve(left.adjoint() * vectorize(*options.reference));
      SteadyState out;
      out.rho = unvectorize(v, d);
      out.residual = (l0.matrix() * v).norm();
      return out;
    }
    if (null_dim > 1)
      throw DegenerateSteadyState(
          "L0 has a " + std::to_string(null_dim) + "-dimensional null space", null_dim);
  }

  Eigen::MatrixXcd bordered = l0.matrix();
  bordered.row(0).setZero();
  for (Eigen::Index i = 0; i < d; ++i) bordered(0, vec_index(i, i, d)) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;

  const Eigen::VectorXcd v = bordered.fullPivLu().solve(rhs);
  SteadyState out;
  out.rho = unvectorize(v, d);
  out.residual = (l0.matrix() * v).norm();
  return out;
}

LinearResponse linear_response_rho1(const Superoperator& l0, const Superoperator& s_plus,
                                    const DenseOperator& rho0, double detuning,
                                    double gamma10) {
  Eigen::MatrixXcd shifted = l0.matrix();
  shifted.diagonal().array() += cplx(0.0, detuning);
  const Eigen::VectorXcd source = -gamma10 * (s_plus.matrix() * vectorize(rho0));

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  if (detuning == 0.0 && lu.rcond() < 1e-13)
    throw SingularAtZeroDetuning("omega_p == omega_d: shifted generator is singular");

  LinearResponse out;
  const Eigen::VectorXcd x = lu.solve(source);
  out.rho1 = unvectorize(x, l0.hilbert_dim());
  out.detuning = detuning;
  out.residual = (shifted * x - source).norm();
  return out;
}

DenseOperator emission_operator(const ArraySpec& array, const RateTable& rates, double omega_p) {
  const int J = array.levels();
  const LadderOps ops(J, array.atoms());
  const auto& front = array.front();
  DenseOperator a = DenseOperator::Zero(ops.dim(), ops.dim());
  for (int n = 0; n < array.atoms(); ++n) {
    const double x = array.transmons[n].position;
    for (int j = 1; j < J; ++j) {
      // gamma~_j(x) with the bare rate under the root; the mirror enters once
      // through the cosine.
      const double g = std::sqrt(j * omega_p * front.gamma10 * rates.bare_decay[n][j] /
                                 front.omega10) *
                       std::cos(rates.wavenumbers[j] * x);
      a += (g / front.gamma10) * ops.lowering(n, j);
    }
  }
  return a;
}

cplx reflection_amplitude(const DenseOperator& rho1, const ArraySpec& array,
                          const RateTable& rates, double omega_p) {
  const DenseOperator a = emission_operator(array, rates, omega_p);
  return 1.0 + cplx(0.0, 2.0) * (a * rho1).trace();
}

double reflection(const DenseOperator& rho1, const ArraySpec& array, const RateTable& rates,
                  double omega_p) {
  return std::abs(reflection_amplitude(rho1, array, rates, omega_p));
}

double nudge_probe(double omega_p, double omega_d, bool* nudged) {
  const bool hit = omega_p == omega_d;
  if (nudged) *nudged = hit;
  return hit ? omega_p + kZeroDetuningNudge : omega_p;
}

double full_model_reflection(const ArraySpec& array, const DriveSpec& drive,
                             const ProbeSpec& probe) {
  const RateTable rates = collective_rates(array);
  const Superoperator l0 = build_liouvillian0(array, drive, rates);
  const SteadyState ss = steady_state(l0);
  ProbeSpec p = probe;
  p.omega_p = nudge_probe(probe.omega_p, drive.omega_d);
  const ProbeGenerators gens = build_probe_superops(array, p);
  const LinearResponse lr = linear_response_rho1(l0, gens.plus, ss.rho, p.omega_p - drive.omega_d,
                                                 array.front().gamma10);
  return reflection(lr.rho1, array, rates, p.omega_p);
}

}  // namespace wgqed

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

#include "wgqed/operators.hpp"

#include "wgqed/errors.hpp"

#include <cmath>
#include <string>

namespace wgqed {

Superoperator::Superoperator(Eigen::MatrixXcd matrix, Eigen::Index hilbert_dim)
    : matrix_(std::move(matrix)), hilbert_dim_(hilbert_dim) {
  if (matrix_.rows() != hilbert_dim * hilbert_dim || matrix_.cols() != matrix_.rows())
    throw Error("superoperator shape does not match the Hilbert dimension");
}

Superoperator Superoperator::zero(Eigen::Index hilbert_dim) {
  const Eigen::Index n = hilbert_dim * hilbert_dim;
  return {Eigen::MatrixXcd::Zero(n, n), hilbert_dim};
}

Superoperator Superoperator::identity(Eigen::Index hilbert_dim) {
  const Eigen::Index n = hilbert_dim * hilbert_dim;
  return {Eigen::MatrixXcd::Identity(n, n), hilbert_dim};
}

DenseOperator Superoperator::apply(const DenseOperator& rho) const {
  return unvectorize(matrix_ * vectorize(rho), hilbert_dim_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  matrix_ += other.matrix_;
  return *this;
}

Superoperator& Superoperator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

Eigen::VectorXcd vectorize(const DenseOperator& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DenseOperator unvectorize(const Eigen::VectorXcd& v, Eigen::Index hilbert_dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), hilbert_dim, hilbert_dim);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Superoperator left_multiply(const DenseOperator& a) {
  const auto d = a.rows();
  return {kron(Eigen::MatrixXcd::Identity(d, d), a), d};
}

Superoperator right_multiply(const DenseOperator& b) {
  const auto d = b.rows();
  return {kron(b.transpose(), Eigen::MatrixXcd::Identity(d, d)), d};
}

Superoperator sandwich(const DenseOperator& a, const DenseOperator& b) {
  return {kron(b.transpose(), a), a.rows()};
}

Superoperator commutator(const DenseOperator& h) {
  Superoperator s = left_multiply(h);
  s.matrix() -= right_multiply(h).matrix();
  return s;
}

LadderOps::LadderOps(int levels, int atoms, Eigen::Index max_dim)
    : levels_(levels), atoms_(atoms), dim_(1) {
  if (levels < 2 || atoms < 1) throw InvalidSpec("ladder operators need levels >= 2, atoms >= 1");
  for (int n = 0; n < atoms; ++n) {
    dim_ *= levels;
    if (dim_ > max_dim)
      throw DimensionOverflow("Hilbert dimension levels^atoms exceeds " + std::to_string(max_dim));
  }
}

DenseOperator LadderOps::sigma(int atom, int j, int k) const {
  if (atom < 0 || atom >= atoms_ || j < 0 || k < 0 || j >= levels_ || k >= levels_)
    throw Error("transition operator index out of range");
  Eigen::Index before = 1;
  for (int n = 0; n < atom; ++n) before *= levels_;
  const Eigen::Index after = dim_ / (before * levels_);
  DenseOperator op = DenseOperator::Zero(dim_, dim_);
  // |..., j, ...><..., k, ...| summed over spectator configurations.
  for (Eigen::Index b = 0; b < before; ++b)
    for (Eigen::Index a = 0; a < after; ++a)
      op((b * levels_ + j) * after + a, (b * levels_ + k) * after + a) = 1.0;
  return op;
}

namespace {

void check_liouville_dim(const LadderOps& ops) {
  if (ops.dim() > kMaxLiouvilleHilbertDim)
    throw DimensionOverflow("Liouvillian needs Hilbert dimension <= " +
                            std::to_string(kMaxLiouvilleHilbertDim));
}

}  // namespace

DenseOperator rotating_frame_hamiltonian(const ArraySpec& array, const DriveSpec& drive) {
  const int J = array.levels();
  const LadderOps ops(J, array.atoms());
  const auto w = build_levels(array.front());
  const double kd = drive.omega_d / kGroupVelocity;

  DenseOperator h = DenseOperator::Zero(ops.dim(), ops.dim());
  for (int n = 0; n < array.atoms(); ++n) {
    const double coupling = drive.rabi * std::cos(kd * array.transmons[n].position) / 2.0;
    for (int j = 0; j < J; ++j) h += (w[j] - j * drive.omega_d) * ops.projector(n, j);
    for (int j = 1; j < J; ++j) {
      const DenseOperator up = ops.raising(n, j);
      h -= std::sqrt(j) * coupling * (up + up.adjoint());
    }
  }
  return h;
}

Superoperator build_liouvillian0(const ArraySpec& array, const DriveSpec& drive,
                                 const RateTable& rates) {
  array.validate();
  drive.validate();
  const int J = array.levels();
  const int N = array.atoms();
  if (rates.levels != J || rates.atoms != N ||
      static_cast<int>(rates.collective_decay.size()) != J ||
      static_cast<int>(rates.lamb_shift.size()) != J)
    throw InvalidSpec("rate table does not match the array");

  const LadderOps ops(J, N);
  check_liouville_dim(ops);
  const cplx I(0.0, 1.0);

  Superoperator L = commutator(rotating_frame_hamiltonian(array, drive));
  L *= -I;

  // Collective decay and exchange: for each (n, m, j, l) with A = sigma^m_{j-1,j}
  // and B = sigma^n_{l,l-1},
  //   (g/2 + i D) [A rho, B] + (g/2 - i D) [A rho, B]^dagger.
  DenseOperator one_sided = DenseOperator::Zero(ops.dim(), ops.dim());
  for (int n = 0; n < N; ++n) {
    for (int m = 0; m < N; ++m) {
      for (int j = 1; j < J; ++j) {
        const cplx z(0.5 * rates.collective_decay[j](n, m), rates.lamb_shift[j](n, m));
        if (z == cplx(0.0)) continue;
        const DenseOperator a = ops.lowering(m, j);
        for (int l = 1; l < J; ++l) {
          const double c = std::sqrt(static_cast<double>(j) * l);
          const DenseOperator b = ops.raising(n, l);
          L.matrix() += c * z * sandwich(a, b).matrix();
          L.matrix() += c * std::conj(z) * sandwich(b.adjoint(), a.adjoint()).matrix();
          one_sided += c * z * (b * a);
        }
      }
    }
  }
  L.matrix() -= left_multiply(one_sided).matrix();
  L.matrix() -= right_multiply(one_sided.adjoint()).matrix();

  for (int n = 0; n < N; ++n) {
    const auto& deph = array.transmons[n].dephasing;
    for (int j = 0; j < static_cast<int>(deph.size()); ++j) {
      if (deph[j] == 0.0) continue;
      const DenseOperator p = ops.projector(n, j);
      L.matrix() += deph[j] * (2.0 * sandwich(p, p).matrix() - left_multiply(p).matrix() -
                               right_multiply(p).matrix());
    }
  }
  return L;
}

Superoperator build_single_atom_liouvillian0(const TransmonSpec& transmon,
                                             const DriveSpec& drive) {
  transmon.validate();
  drive.validate();
  const int J = transmon.levels;
  const auto w = build_levels(transmon);
  const auto gamma = decay_rates(transmon);
  const cplx I(0.0, 1.0);
  auto s = [J](int j, int k) {
    DenseOperator op = DenseOperator::Zero(J, J);
    op(j, k) = 1.0;
    return op;
  };

  Superoperator L = Superoperator::zero(J);
  for (int j = 0; j < J; ++j)
    L.matrix() += I * (j * drive.omega_d - w[j]) * commutator(s(j, j)).matrix();

  const double drive_amp = drive.rabi * std::cos(drive.omega_d / kGroupVelocity * transmon.position);
  for (int j = 1; j < J; ++j) {
    // [s, rho] - h.c. = [s, rho] + [s^dagger, rho]
    const double c = std::sqrt(j) * drive_amp / 2.0;
    L.matrix() += I * c * (commutator(s(j, j - 1)).matrix() + commutator(s(j - 1, j)).matrix());
  }

  for (int j = 1; j < J; ++j) {
    for (int l = 1; l < J; ++l) {
      const double c = std::sqrt(static_cast<double>(j) * l) * gamma[j] / 2.0;
      const DenseOperator a = s(j - 1, j);
      const DenseOperator b = s(l, l - 1);
      L.matrix() += c * (sandwich(a, b).matrix() - left_multiply(b * a).matrix());
      L.matrix() += c * (sandwich(b.adjoint(), a.adjoint()).matrix() -
                         right_multiply(a.adjoint() * b.adjoint()).matrix());
    }
  }

  for (int j = 0; j < static_cast<int>(transmon.dephasing.size()); ++j) {
    const DenseOperator p = s(j, j);
    const double g = transmon.dephasing[j];
    L.matrix() += g * (sandwich(p, p).matrix() - left_multiply(p).matrix());
    L.matrix() += g * (sandwich(p, p).matrix() - right_multiply(p).matrix());
  }
  return L;
}

ProbeGenerators build_probe_superops(const ArraySpec& array, const ProbeSpec& probe) {
  array.validate();
  probe.validate();
  const int J = array.levels();
  const LadderOps ops(J, array.atoms());
  check_liouville_dim(ops);
  const double kp = probe.omega_p / kGroupVelocity;
  const cplx I(0.0, 1.0);

  DenseOperator up = DenseOperator::Zero(ops.dim(), ops.dim());
  for (int n = 0; n < array.atoms(); ++n) {
    const double c = std::cos(kp * array.transmons[n].position) / 2.0;
    for (int j = 1; j < J; ++j) up += std::sqrt(j) * c * ops.raising(n, j);
  }
  ProbeGenerators g{commutator(up), commutator(up.adjoint())};
  g.plus *= I;
  g.minus *= I;
  return g;
}

}  // namespace wgqed

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

// Hilbert-space operators and Liouville-space superoperators.
//
// Density matrices are vectorized column-major (Eigen's default), so the
// superoperator of rho -> A rho B is kron(B^T, A).

#include "wgqed/model.hpp"

#include <Eigen/Dense>

#include <complex>

namespace wgqed {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

inline constexpr Eigen::Index kMaxLadderDim = 1024;
inline constexpr Eigen::Index kMaxLiouvilleHilbertDim = 64;

class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(Eigen::MatrixXcd matrix, Eigen::Index hilbert_dim);

  static Superoperator zero(Eigen::Index hilbert_dim);
  static Superoperator identity(Eigen::Index hilbert_dim);

  Eigen::Index hilbert_dim() const { return hilbert_dim_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd& matrix() { return matrix_; }

  DenseOperator apply(const DenseOperator& rho) const;

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator*=(cplx s);
  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator*(cplx s, Superoperator a) { return a *= s; }

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::Index hilbert_dim_ = 0;
};

Eigen::VectorXcd vectorize(const DenseOperator& rho);
DenseOperator unvectorize(const Eigen::VectorXcd& v, Eigen::Index hilbert_dim);

/// Index of element (row, col) in the vectorized density matrix.
inline Eigen::Index vec_index(Eigen::Index row, Eigen::Index col, Eigen::Index dim) {
  return col * dim + row;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Superoperator left_multiply(const DenseOperator& a);        ///< rho -> a rho
Superoperator right_multiply(const DenseOperator& b);       ///< rho -> rho b
Superoperator sandwich(const DenseOperator& a, const DenseOperator& b);  ///< rho -> a rho b
Superoperator commutator(const DenseOperator& h);           ///< rho -> [h, rho]

/// Transition operators sigma^n_{j,k} = |j><k| on atom n, identity elsewhere.
/// Atom 0 is the most significant tensor factor.
class LadderOps {
 public:
  LadderOps(int levels, int atoms, Eigen::Index max_dim = kMaxLadderDim);

  int levels() const { return levels_; }
  int atoms() const { return atoms_; }
  Eigen::Index dim() const { return dim_; }

  DenseOperator sigma(int atom, int j, int k) const;
  DenseOperator lowering(int atom, int j) const { return sigma(atom, j - 1, j); }
  DenseOperator raising(int atom, int j) const { return sigma(atom, j, j - 1); }
  DenseOperator projector(int atom, int j) const { return sigma(atom, j, j); }

 private:
  int levels_;
  int atoms_;
  Eigen::Index dim_;
};

/// Rotating-frame atom + drive Hamiltonian (units of gamma10, hbar = 1).
DenseOperator rotating_frame_hamiltonian(const ArraySpec& array, const DriveSpec& drive);

/// Zeroth-order generator of the multi-atom master equation in the omega_d
/// rotating frame: detuning, drive, collective decay, dipole-dipole shift and
/// pure dephasing. No probe terms.
Superoperator build_liouvillian0(const ArraySpec& array, const DriveSpec& drive,
                                 const RateTable& rates);

/// Single-atom generator assembled directly from the main-text master
/// equation (mirror rates, no Lamb shift). Independent construction path.
Superoperator build_single_atom_liouvillian0(const TransmonSpec& transmon,
                                             const DriveSpec& drive);

struct ProbeGenerators {
  Superoperator plus;   ///< multiplies Omega_p e^{i(omega_d - omega_p) t}
  Superoperator minus;  ///< multiplies Omega_p e^{-i(omega_d - omega_p) t}
};

ProbeGenerators build_probe_superops(const ArraySpec& array, const ProbeSpec& probe);

}  // namespace wgqed

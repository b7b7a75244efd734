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

// Dressed-state description of the probe response.
//
// Index conventions used throughout this header (d = Hilbert dimension):
//   |D_mu>            columns of DressedBasis::vectors, ascending energy
//   <sigma_{mu nu}>   = <D_nu| rho |D_mu>; tables indexed (mu, nu)
//   C(mu, nu)         = <D_mu| A |D_nu>, A the emission operator, so that
//                       sum_{mu nu} C(mu,nu) <sigma_{mu nu}> = Tr(A rho1)
//   delta^D_{mu nu}   = omega_p - (omega^D_nu - omega^D_mu + omega_d)
//   Omega^D_{mu nu}   = <D_nu| R |D_mu>, R = sum sqrt(j) cos(k_p x_n)/2 sigma^n_{j,j-1}
//
// The rank-4 tensors follow the printed sums; a(n,j) = <D|sigma^n_{j-1,j}|D>:
//   Gbar(a,b,c,d)  = sum chi^{nm}_{jl} a(m,j)_{ab} conj(a(n,l)_{cd})
//                    + 2 sum gphi_{n,j} P(n,j)_{ab} conj(P(n,j)_{cd})
//   G+(a,b,c,d)    = sum sqrt(jl)(g^{nm}_j/2 + i D^{nm}_j) conj(a(n,l)_{ab}) a(m,j)_{dc}
//                    + sum gphi conj(P_{ab}) P_{dc}
//   G-(a,b,c,d)    = sum sqrt(jl)(g^{nm}_j/2 - i D^{nm}_j) conj(a(m,j)_{ab}) a(n,l)_{dc}
//                    + sum gphi conj(P_{ab}) P_{dc}
// With K(b,c) = sum_a G+(a,b,c,a), the generator acting on X = U^dag rho U is
//   dX/dt = -i[E, X] + sum_{bd} Gbar(., b, ., d) X_{bd} - K X - X K^dag.

#include "wgqed/model.hpp"
#include "wgqed/operators.hpp"

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace wgqed {

struct DressedBasis {
  Eigen::VectorXd energies;   ///< omega^D_mu, ascending
  Eigen::MatrixXcd vectors;   ///< unitary, column mu is |D_mu>
  DenseOperator hamiltonian;  ///< rotating-frame atom + drive Hamiltonian
  double omega_d = 0.0;

  Eigen::Index dim() const { return energies.size(); }
  /// U^dag op U
  DenseOperator to_dressed(const DenseOperator& op) const;
};

/// Diagonalizes the rotating-frame Hamiltonian. Each column's largest entry is
/// made real positive; degenerate levels are ordered by descending overlap with
/// the lowest bare state, then lexicographically by bare-state magnitudes.
DressedBasis dressed_basis(const ArraySpec& array, const DriveSpec& drive);

double dressed_detuning(const DressedBasis& basis, int mu, int nu, double omega_p);

/// Dense tensor over four dressed indices.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(Eigen::Index d) : d_(d), data_(Eigen::MatrixXcd::Zero(d * d, d * d)) {}

  Eigen::Index dim() const { return d_; }
  cplx operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index d) const {
    return data_(a + d_ * b, c + d_ * d);
  }
  /// Row index (a,b) = a + d*b, column index (c,d) = c + d*d.
  Eigen::MatrixXcd& flat() { return data_; }
  const Eigen::MatrixXcd& flat() const { return data_; }

 private:
  Eigen::Index d_ = 0;
  Eigen::MatrixXcd data_;
};

struct SidebandRates {
  Tensor4 jump;                    ///< Gbar
  Tensor4 plus;                    ///< G+
  Tensor4 minus;                   ///< G-
  Eigen::MatrixXcd one_sided;      ///< K(b,c) = sum_a G+(a,b,c,a)
  Eigen::MatrixXcd one_sided_adj;  ///< sum_a G-(a,b,c,a), equals K^dag
  Eigen::MatrixXcd composite;      ///< Gamma^D(mu, nu), diagonal OBE rate (negative = decay)
  /// chi^{nm}_{jk}, eta^{+}_{nm,jk}, eta^{-}_{nm,jk}; entry [n * atoms + m](j, k),
  /// rows/cols indexed by the upper level (0 unused).
  std::vector<Eigen::MatrixXcd> chi;
  std::vector<Eigen::MatrixXcd> eta_plus;
  std::vector<Eigen::MatrixXcd> eta_minus;
};

SidebandRates dressed_rates(const DressedBasis& basis, const ArraySpec& array,
                            const RateTable& rates);

/// C(mu, nu) = <D_mu| A |D_nu>.
Eigen::MatrixXcd coefficient_C(const DressedBasis& basis, const ArraySpec& array,
                               const RateTable& rates, double omega_p);

struct PumpTerms {
  Eigen::MatrixXcd rabi;      ///< Omega^D(mu, nu)
  Eigen::MatrixXcd sigma0;    ///< <sigma_{mu nu}>_(0) = <D_nu|rho0|D_mu>
  Eigen::MatrixXcd products;  ///< Omega^D(mu,nu) <sigma_{mu nu}>_(0)
  /// Inhomogeneous term of d<sigma_{mu nu}>/dt:
  /// i gamma10 sum_eta (Omega^D_{eta nu} <sigma_{mu eta}>_0 - Omega^D_{mu eta} <sigma_{eta nu}>_0)
  Eigen::MatrixXcd source;
};

PumpTerms pump_terms(const DressedBasis& basis, const DenseOperator& rho0,
                     const ArraySpec& array, double omega_p);

struct DressedPopulations {
  Eigen::VectorXd populations;  ///< <D_mu|rho0|D_mu>
  Eigen::MatrixXd difference;   ///< difference(nu, mu) = P^D_{nu mu} = p_nu - p_mu
};

DressedPopulations dressed_populations(const DenseOperator& rho0, const DressedBasis& basis);

/// Dressed coherence <sigma_{mu nu}> driven by the probe; the transition
/// |D_nu, F+1> <-> |D_mu, F>.
struct Sideband {
  int mu = 0;
  int nu = 0;
  double detuning = 0.0;  ///< delta^D_{mu nu}
  int f_offset = 1;       ///< drive quanta carried by D_nu relative to D_mu
};

inline constexpr double kDefaultSidebandThreshold = 1.0;

/// All ordered pairs mu != nu with |delta^D_{mu nu}| <= threshold, sorted by (mu, nu).
std::vector<Sideband> identify_sidebands(const DressedBasis& basis, double omega_p,
                                         double threshold = kDefaultSidebandThreshold);

struct ReducedSolution {
  Eigen::VectorXcd coherences;  ///< <sigma_{mu_i nu_i}>, same order as the sidebands
  Eigen::MatrixXcd pi;          ///< coefficient matrix actually solved
  cplx amplitude{1.0, 0.0};
  double r = 1.0;
  double condition_number = 1.0;
};

struct ReducedOptions {
  bool zero_offdiagonal = false;
  double max_condition = 1e13;
};

/// Coefficient matrix Pi of the kept coherences, including detuning.
Eigen::MatrixXcd sideband_matrix(const std::vector<Sideband>& sidebands, const SidebandRates& rates);

/// Solves Pi x = -source over the kept coherences and returns r. An empty
/// sideband list gives r = 1. Throws SingularPi.
ReducedSolution reduced_model_solve(const std::vector<Sideband>& sidebands,
                                    const SidebandRates& rates, const PumpTerms& pump,
                                    const Eigen::MatrixXcd& coefficients,
                                    const ReducedOptions& options = {});

struct SingleSideband {
  cplx prefactor;            ///< 2 C Omega^D / Gamma^D
  double population_difference = 0.0;  ///< P^D_{nu mu}
  double r = 1.0;
};

/// r = |1 - 2 C_{mu nu} Omega^D_{mu nu} P^D_{nu mu} / Gamma^D_{mu nu}|. Throws ZeroRelaxation.
SingleSideband single_sideband_r(int mu, int nu, const SidebandRates& rates,
                                 const PumpTerms& pump, const Eigen::MatrixXcd& coefficients,
                                 const DressedPopulations& populations);

/// Independent single-sideband contributions summed, each with its own
/// detuning: |1 - sum_i 2 C_i Omega_i P_i / (Gamma_i + i delta_i)|.
double single_sideband_sum(const std::vector<Sideband>& sidebands, const SidebandRates& rates,
                           const PumpTerms& pump, const Eigen::MatrixXcd& coefficients,
                           const DressedPopulations& populations);

/// Full dressed-basis generator (L0 + i (omega_p - omega_d)) assembled from the
/// tensors, acting on vec(X) with X = U^dag rho U.
Eigen::MatrixXcd dressed_generator(const DressedBasis& basis, const SidebandRates& rates,
                                   double omega_p);

enum class GainClass { inversion, interference, mixed, attenuation };

std::string to_string(GainClass c);
GainClass gain_class_from_string(const std::string& s);

struct SidebandReport {
  double drive_power = 0.0;
  double omega_p = 0.0;
  std::vector<Sideband> active;
  Eigen::VectorXd populations;
  std::vector<double> inversion;  ///< P^D_{nu mu} per active pair
  double r_full = std::numeric_limits<double>::quiet_NaN();
  double r_reduced = 1.0;
  double r_decoupled = 1.0;
  double r_single = 1.0;
  GainClass classification = GainClass::attenuation;
};

inline constexpr double kGainTolerance = 0.02;

/// inversion: single-sideband physics alone reproduces r within 2%;
/// interference: r > 1 with no inverted active pair and decoupled r <= 1.02;
/// mixed: gain with inversion that the independent sidebands do not explain;
/// attenuation: r <= 1.
GainClass classify_gain(const SidebandReport& report);

/// Everything at fixed drive that the per-probe dressed analysis reuses.
struct DressedAnalysis {
  DressedBasis basis;
  SidebandRates rates;
  DenseOperator rho0;
  DressedPopulations populations;
};

DressedAnalysis analyze_drive(const ArraySpec& array, const DriveSpec& drive,
                              const RateTable& rates, const DenseOperator& rho0);

/// Reduced, decoupled and single-sideband r at one probe frequency, plus the
/// classification. Pass r_full when the full model was evaluated.
SidebandReport sideband_report(const DressedAnalysis& analysis, const ArraySpec& array,
                               const RateTable& rates, double omega_p,
                               double threshold = kDefaultSidebandThreshold,
                               double r_full = std::numeric_limits<double>::quiet_NaN());

}  // namespace wgqed

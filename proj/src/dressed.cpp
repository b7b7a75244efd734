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

#include "wgqed/dressed.hpp"

#include "wgqed/errors.hpp"
#include "wgqed/response.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wgqed {

namespace {

constexpr double kDegenerateTol = 1e-9;

void fix_column_phase(Eigen::MatrixXcd& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      // strict comparison with a small margin keeps the first of near-ties
      if (std::abs(u(r, c)) > mag + 1e-12) {
        mag = std::abs(u(r, c));
        best = r;
      }
    }
    if (mag > 0.0) u.col(c) *= std::conj(u(best, c)) / mag;
  }
}

bool ranks_before(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index r = 0; r < a.size(); ++r) {
    const double x = std::abs(a(r));
    const double y = std::abs(b(r));
    if (std::abs(x - y) > 1e-12) return x > y;
  }
  return false;
}

// Generator coefficient coupling X(b, d) into dX(a, c)/dt, dissipative part only.
cplx generator_entry(const SidebandRates& s, Eigen::Index a, Eigen::Index c, Eigen::Index b,
                     Eigen::Index d) {
  cplx v = s.jump(a, b, c, d);
  if (c == d) v -= s.one_sided(a, b);
  if (a == b) v -= s.one_sided_adj(d, c);
  return v;
}

// Stacks vec(op) as columns, one per (atom, upper level).
Eigen::MatrixXcd stack(const std::vector<DenseOperator>& ops, bool transpose) {
  const Eigen::Index d = ops.front().rows();
  Eigen::MatrixXcd v(d * d, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i)
    v.col(static_cast<Eigen::Index>(i)) =
        vectorize(transpose ? DenseOperator(ops[i].transpose()) : ops[i]);
  return v;
}

}  // namespace

DenseOperator DressedBasis::to_dressed(const DenseOperator& op) const {
  return vectors.adjoint() * op * vectors;
}

DressedBasis dressed_basis(const ArraySpec& array, const DriveSpec& drive) {
  DressedBasis out;
  out.omega_d = drive.omega_d;
  out.hamiltonian = rotating_frame_hamiltonian(array, drive);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.hamiltonian);
  if (es.info() != Eigen::Success) throw NonConvergence("dressed diagonalization failed");
  Eigen::VectorXd e = es.eigenvalues();
  Eigen::MatrixXcd u = es.eigenvectors();
  fix_column_phase(u);

  const Eigen::Index d = e.size();
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  // Eigen returns ascending values; only reorder within degenerate runs.
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index stop = start + 1;
    while (stop < d && e(stop) - e(start) <= kDegenerateTol * std::max(1.0, std::abs(e(start))))
      ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](Eigen::Index a, Eigen::Index b) {
                       const double oa = std::abs(u(0, a));
                       const double ob = std::abs(u(0, b));
                       if (std::abs(oa - ob) > 1e-12) return oa > ob;
                       return ranks_before(u.col(a), u.col(b));
                     });
    start = stop;
  }
  out.energies.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.energies(i) = e(order[i]);
    out.vectors.col(i) = u.col(order[i]);
  }
  return out;
}

double dressed_detuning(const DressedBasis& basis, int mu, int nu, double omega_p) {
  return omega_p - (basis.energies(nu) - basis.energies(mu) + basis.omega_d);
}

SidebandRates dressed_rates(const DressedBasis& basis, const ArraySpec& array,
                            const RateTable& rates) {
  const int J = array.levels();
  const int N = array.atoms();
  const Eigen::Index d = basis.dim();
  const LadderOps ops(J, N);
  // Lowering operators in the dressed basis, ordered p = n * (J - 1) + (j - 1).
  std::vector<DenseOperator> low;
  for (int n = 0; n < N; ++n)
    for (int j = 1; j < J; ++j) low.push_back(basis.to_dressed(ops.lowering(n, j)));
  const int P = static_cast<int>(low.size());
  auto idx = [J](int n, int j) { return n * (J - 1) + (j - 1); };
  auto z = [&](int n, int m, int j) {
    return cplx(0.5 * rates.collective_decay[j](n, m), rates.lamb_shift[j](n, m));
  };

  SidebandRates s;
  s.chi.assign(N * N, Eigen::MatrixXcd::Zero(J, J));
  s.eta_plus.assign(N * N, Eigen::MatrixXcd::Zero(J, J));
  s.eta_minus.assign(N * N, Eigen::MatrixXcd::Zero(J, J));
  Eigen::MatrixXcd chi_hat = Eigen::MatrixXcd::Zero(P, P);  // [(m,j),(n,l)]
  Eigen::MatrixXcd y_plus = Eigen::MatrixXcd::Zero(P, P);   // [(n,l),(m,j)]
  Eigen::MatrixXcd y_minus = Eigen::MatrixXcd::Zero(P, P);  // [(m,j),(n,l)]
  for (int n = 0; n < N; ++n) {
    for (int m = 0; m < N; ++m) {
      for (int j = 1; j < J; ++j) {
        for (int l = 1; l < J; ++l) {
          const double root = std::sqrt(static_cast<double>(j) * l);
          const cplx c = root * (z(n, m, j) + std::conj(z(m, n, l)));
          const cplx ep = root * z(n, m, j);
          s.chi[n * N + m](j, l) = c;
          s.eta_plus[n * N + m](j, l) = ep;
          s.eta_minus[n * N + m](j, l) = std::conj(ep);
          chi_hat(idx(m, j), idx(n, l)) = c;
          y_plus(idx(n, l), idx(m, j)) = ep;
          y_minus(idx(m, j), idx(n, l)) = std::conj(ep);
        }
      }
    }
  }

  const Eigen::MatrixXcd v = stack(low, false);
  const Eigen::MatrixXcd w = stack(low, true);
  s.jump = Tensor4(d);
  s.plus = Tensor4(d);
  s.minus = Tensor4(d);
  s.jump.flat() = v * chi_hat * v.adjoint();
  s.plus.flat() = v.conjugate() * y_plus * w.transpose();
  s.minus.flat() = v.conjugate() * y_minus * w.transpose();

  for (int n = 0; n < N; ++n) {
    const auto& deph = array.transmons[n].dephasing;
    for (int j = 0; j < static_cast<int>(deph.size()); ++j) {
      if (deph[j] == 0.0) continue;
      const DenseOperator p = basis.to_dressed(ops.projector(n, j));
      const Eigen::VectorXcd pv = vectorize(p);
      const Eigen::VectorXcd pw = vectorize(p.transpose());
      s.jump.flat() += 2.0 * deph[j] * pv * pv.adjoint();
      const Eigen::MatrixXcd one = deph[j] * pv.conjugate() * pw.transpose();
      s.plus.flat() += one;
      s.minus.flat() += one;
    }
  }

  s.one_sided = Eigen::MatrixXcd::Zero(d, d);
  s.one_sided_adj = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index a = 0; a < d; ++a) {
        s.one_sided(b, c) += s.plus(a, b, c, a);
        s.one_sided_adj(b, c) += s.minus(a, b, c, a);
      }

  s.composite.resize(d, d);
  for (Eigen::Index mu = 0; mu < d; ++mu)
    for (Eigen::Index nu = 0; nu < d; ++nu) s.composite(mu, nu) = generator_entry(s, nu, mu, nu, mu);
  return s;
}

Eigen::MatrixXcd coefficient_C(const DressedBasis& basis, const ArraySpec& array,
                               const RateTable& rates, double omega_p) {
  return basis.to_dressed(emission_operator(array, rates, omega_p));
}

PumpTerms pump_terms(const DressedBasis& basis, const DenseOperator& rho0,
                     const ArraySpec& array, double omega_p) {
  const int J = array.levels();
  const LadderOps ops(J, array.atoms());
  const double kp = omega_p / kGroupVelocity;
  const double g10 = array.front().gamma10;

  DenseOperator up = DenseOperator::Zero(ops.dim(), ops.dim());
  for (int n = 0; n < array.atoms(); ++n) {
    const double c = std::cos(kp * array.transmons[n].position) / 2.0;
    for (int j = 1; j < J; ++j) up += std::sqrt(j) * c * ops.raising(n, j);
  }
  const DenseOperator r = basis.to_dressed(up);
  const DenseOperator x0 = basis.to_dressed(rho0);

  PumpTerms t;
  t.rabi = g10 * r.transpose();
  t.sigma0 = x0.transpose();
  t.products = t.rabi.cwiseProduct(t.sigma0);
  t.source = (cplx(0.0, g10) * (r * x0 - x0 * r)).transpose();
  return t;
}

DressedPopulations dressed_populations(const DenseOperator& rho0, const DressedBasis& basis) {
  const DenseOperator x0 = basis.to_dressed(rho0);
  DressedPopulations p;
  p.populations = x0.diagonal().real();
  const Eigen::Index d = p.populations.size();
  p.difference.resize(d, d);
  for (Eigen::Index nu = 0; nu < d; ++nu)
    for (Eigen::Index mu = 0; mu < d; ++mu)
      p.difference(nu, mu) = p.populations(nu) - p.populations(mu);
  return p;
}

std::vector<Sideband> identify_sidebands(const DressedBasis& basis, double omega_p,
                                         double threshold) {
  std::vector<Sideband> out;
  const int d = static_cast<int>(basis.dim());
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      if (mu == nu) continue;
      const double delta = dressed_detuning(basis, mu, nu, omega_p);
      if (std::abs(delta) <= threshold) out.push_back({mu, nu, delta, 1});
    }
  return out;
}

Eigen::MatrixXcd sideband_matrix(const std::vector<Sideband>& sidebands,
                                 const SidebandRates& rates) {
  const Eigen::Index m = static_cast<Eigen::Index>(sidebands.size());
  Eigen::MatrixXcd pi(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& a = sidebands[i];
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& b = sidebands[k];
      pi(i, k) = generator_entry(rates, a.nu, a.mu, b.nu, b.mu);
    }
    pi(i, i) += cplx(0.0, a.detuning);
  }
  return pi;
}

ReducedSolution reduced_model_solve(const std::vector<Sideband>& sidebands,
                                    const SidebandRates& rates, const PumpTerms& pump,
                                    const Eigen::MatrixXcd& coefficients,
                                    const ReducedOptions& options) {
  ReducedSolution out;
  const Eigen::Index m = static_cast<Eigen::Index>(sidebands.size());
  if (m == 0) return out;

  out.pi = sideband_matrix(sidebands, rates);
  if (options.zero_offdiagonal) out.pi = Eigen::MatrixXcd(out.pi.diagonal().asDiagonal());

  Eigen::VectorXcd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) rhs(i) = -pump.source(sidebands[i].mu, sidebands[i].nu);

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.pi);
  const auto& sv = svd.singularValues();
  out.condition_number = sv(m - 1) > 0.0 ? sv(0) / sv(m - 1)
                                         : std::numeric_limits<double>::infinity();
  if (!(out.condition_number <= options.max_condition)) {
    std::ostringstream msg;
    msg << "sideband matrix is singular (" << m << " coherences)";
    throw SingularPi(msg.str(), out.condition_number);
  }
  out.coherences = out.pi.partialPivLu().solve(rhs);

  cplx sum = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    sum += coefficients(sidebands[i].mu, sidebands[i].nu) * out.coherences(i);
  out.amplitude = 1.0 + cplx(0.0, 2.0) * sum;
  out.r = std::abs(out.amplitude);
  return out;
}

SingleSideband single_sideband_r(int mu, int nu, const SidebandRates& rates,
                                 const PumpTerms& pump, const Eigen::MatrixXcd& coefficients,
                                 const DressedPopulations& populations) {
  const cplx gamma = rates.composite(mu, nu);
  if (std::abs(gamma) == 0.0) throw ZeroRelaxation("composite relaxation rate is zero");
  SingleSideband s;
  s.prefactor = 2.0 * coefficients(mu, nu) * pump.rabi(mu, nu) / gamma;
  s.population_difference = populations.difference(nu, mu);
  s.r = std::abs(1.0 - s.prefactor * s.population_difference);
  return s;
}

double single_sideband_sum(const std::vector<Sideband>& sidebands, const SidebandRates& rates,
                           const PumpTerms& pump, const Eigen::MatrixXcd& coefficients,
                           const DressedPopulations& populations) {
  cplx amp = 1.0;
  for (const auto& sb : sidebands) {
    const cplx gamma = rates.composite(sb.mu, sb.nu) + cplx(0.0, sb.detuning);
    if (std::abs(gamma) == 0.0) throw ZeroRelaxation("composite relaxation rate is zero");
    amp -= 2.0 * coefficients(sb.mu, sb.nu) * pump.rabi(sb.mu, sb.nu) *
           populations.difference(sb.nu, sb.mu) / gamma;
  }
  return std::abs(amp);
}

Eigen::MatrixXcd dressed_generator(const DressedBasis& basis, const SidebandRates& rates,
                                   double omega_p) {
  const Eigen::Index d = basis.dim();
  const double delta = omega_p - basis.omega_d;
  Eigen::MatrixXcd g(d * d, d * d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index dd = 0; dd < d; ++dd)
        for (Eigen::Index b = 0; b < d; ++b)
          g(a + d * c, b + d * dd) = generator_entry(rates, a, c, b, dd);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index a = 0; a < d; ++a)
      g(a + d * c, a + d * c) +=
          cplx(0.0, delta - (basis.energies(a) - basis.energies(c)));
  return g;
}

std::string to_string(GainClass c) {
  switch (c) {
    case GainClass::inversion: return "inversion";
    case GainClass::interference: return "interference";
    case GainClass::mixed: return "mixed";
    case GainClass::attenuation: return "attenuation";
  }
  return "attenuation";
}

GainClass gain_class_from_string(const std::string& s) {
  if (s == "inversion") return GainClass::inversion;
  if (s == "interference") return GainClass::interference;
  if (s == "mixed") return GainClass::mixed;
  if (s == "attenuation") return GainClass::attenuation;
  throw InvalidSpec("unknown gain class '" + s + "'");
}

GainClass classify_gain(const SidebandReport& report) {
  const double r = std::isfinite(report.r_full) ? report.r_full : report.r_reduced;
  if (!(r > 1.0)) return GainClass::attenuation;
  const bool inverted =
      std::any_of(report.inversion.begin(), report.inversion.end(), [](double p) { return p > 0.0; });
  if (!inverted) {
    return report.r_decoupled <= 1.0 + kGainTolerance ? GainClass::interference : GainClass::mixed;
  }
  if (std::abs(report.r_single - r) <= kGainTolerance * r) return GainClass::inversion;
  return GainClass::mixed;
}

DressedAnalysis analyze_drive(const ArraySpec& array, const DriveSpec& drive,
                              const RateTable& rates, const DenseOperator& rho0) {
  DressedAnalysis a;
  a.basis = dressed_basis(array, drive);
  a.rates = dressed_rates(a.basis, array, rates);
  a.rho0 = rho0;
  a.populations = dressed_populations(rho0, a.basis);
  return a;
}

SidebandReport sideband_report(const DressedAnalysis& analysis, const ArraySpec& array,
                               const RateTable& rates, double omega_p, double threshold,
                               double r_full) {
  SidebandReport rep;
  rep.omega_p = omega_p;
  rep.r_full = r_full;
  rep.populations = analysis.populations.populations;
  rep.active = identify_sidebands(analysis.basis, omega_p, threshold);
  for (const auto& sb : rep.active)
    rep.inversion.push_back(analysis.populations.difference(sb.nu, sb.mu));

  const Eigen::MatrixXcd c = coefficient_C(analysis.basis, array, rates, omega_p);
  const PumpTerms pump = pump_terms(analysis.basis, analysis.rho0, array, omega_p);
  rep.r_reduced = reduced_model_solve(rep.active, analysis.rates, pump, c).r;
  ReducedOptions diag;
  diag.zero_offdiagonal = true;
  rep.r_decoupled = reduced_model_solve(rep.active, analysis.rates, pump, c, diag).r;
  rep.r_single = single_sideband_sum(rep.active, analysis.rates, pump, c, analysis.populations);
  rep.classification = classify_gain(rep);
  return rep;
}

}  // namespace wgqed

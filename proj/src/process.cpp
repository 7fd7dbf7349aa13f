// Copyright 2026 The cqpt developers
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

#include "cqpt/process.hpp"

#include <cmath>
#include <memory>
#include <set>

namespace cqpt {

ProcessMatrix::ProcessMatrix(GammaBasis b, HermitianMatrix c)
    : basis(std::move(b)), chi(std::move(c)) {
  if (chi.dim() != basis.d * basis.d)
    throw DimensionError("ProcessMatrix: chi must be d^2 x d^2");
  if (min_eigenvalue(chi.mat()) < -1e-10)
    throw NumericalError("ProcessMatrix: chi must be positive semidefinite");
}

ProcessMatrix process_matrix_of_unitary(const UnitaryGate& gate, const GammaBasis& basis) {
  if (gate.dim() != basis.d)
    throw DimensionError("process_matrix_of_unitary: gate and basis dims differ");
  const ComplexVector e = expansion_coefficients(basis, gate.matrix);
  return ProcessMatrix(basis, HermitianMatrix::Symmetrized(e * e.adjoint()));
}

ComplexMatrix apply_channel(const ProcessMatrix& process, const ComplexMatrix& rho) {
  const GammaBasis& basis = process.basis;
  if (rho.rows() != basis.d || rho.cols() != basis.d)
    throw DimensionError("apply_channel: state dimension mismatch");
  const Index d2 = basis.size();
  ComplexMatrix out = ComplexMatrix::Zero(basis.d, basis.d);
  for (Index b = 0; b < d2; ++b) {
    ComplexMatrix mixed = ComplexMatrix::Zero(basis.d, basis.d);
    for (Index a = 0; a < d2; ++a)
      mixed += process.chi.mat()(a, b) * basis.elements[static_cast<std::size_t>(a)];
    out += mixed * rho * basis.elements[static_cast<std::size_t>(b)].adjoint();
  }
  return out;
}

double tp_residual(const ComplexMatrix& chi, const GammaBasis& basis) {
  const Index d2 = basis.size();
  if (chi.rows() != d2 || chi.cols() != d2) throw DimensionError("tp_residual: chi dim mismatch");
  ComplexMatrix acc = ComplexMatrix::Zero(basis.d, basis.d);
  for (Index b = 0; b < d2; ++b) {
    ComplexMatrix mixed = ComplexMatrix::Zero(basis.d, basis.d);
    for (Index a = 0; a < d2; ++a)
      mixed += chi(a, b) * basis.elements[static_cast<std::size_t>(a)];
    acc += basis.elements[static_cast<std::size_t>(b)].adjoint() * mixed;
  }
  acc -= ComplexMatrix::Identity(basis.d, basis.d);
  return acc.norm();
}

ComplexVector polarization_ket(char letter) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexVector k(2);
  switch (letter) {
    case 'H': k << 1, 0; break;
    case 'V': k << 0, 1; break;
    case 'D': k << inv_sqrt2, inv_sqrt2; break;
    case 'A': k << inv_sqrt2, -inv_sqrt2; break;
    case 'R': k << inv_sqrt2, Complex(0, inv_sqrt2); break;
    case 'L': k << inv_sqrt2, Complex(0, -inv_sqrt2); break;
    default: throw ConfigError(std::string("polarization_ket: unknown letter '") + letter + "'");
  }
  return k;
}

ComplexVector ket_for_label(const std::string& label) {
  if (label.empty()) throw ConfigError("ket_for_label: empty label");
  ComplexVector k = polarization_ket(label[0]);
  for (std::size_t q = 1; q < label.size(); ++q) {
    const ComplexVector next = polarization_ket(label[q]);
    ComplexVector combined(k.size() * 2);
    for (Index i = 0; i < k.size(); ++i) {
      combined[2 * i] = k[i] * next[0];
      combined[2 * i + 1] = k[i] * next[1];
    }
    k = std::move(combined);
  }
  return k;
}

namespace {

const char* kTwoQubitInputs[16] = {"HH", "VH", "DV", "RH", "RV", "VV", "HV", "HA",
                                   "HR", "RR", "RA", "DA", "DL", "VA", "VR", "DH"};
const char* kTwoQubitObservables[16] = {"HH", "HV", "VH", "VV", "HD", "HR", "VR", "VD",
                                        "DD", "LR", "LD", "DL", "DV", "LV", "DH", "LH"};

std::vector<std::string> product_labels(int n_qubits) {
  const char letters[4] = {'H', 'V', 'D', 'R'};
  std::vector<std::string> out;
  const std::size_t total = std::size_t{1} << (2 * n_qubits);
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string s(static_cast<std::size_t>(n_qubits), 'H');
    std::size_t rem = idx;
    for (int q = n_qubits - 1; q >= 0; --q) {
      s[static_cast<std::size_t>(q)] = letters[rem & 3];
      rem >>= 2;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

ConfigurationSet build_configuration_set(int n_qubits) {
  ConfigurationSet set;
  set.n_qubits = n_qubits;
  if (n_qubits == 2) {
    for (const char* s : kTwoQubitInputs) set.input_labels.emplace_back(s);
    for (const char* s : kTwoQubitObservables) set.observable_labels.emplace_back(s);
  } else if (n_qubits == 3 || n_qubits == 4) {
    set.input_labels = product_labels(n_qubits);
    set.observable_labels = set.input_labels;
  } else {
    throw ConfigError("build_configuration_set: supported qubit counts are 2, 3, 4");
  }
  for (const std::string& s : set.input_labels) set.input_kets.push_back(ket_for_label(s));
  for (const std::string& s : set.observable_labels)
    set.observable_kets.push_back(ket_for_label(s));
  set.pairs.reserve(set.input_kets.size() * set.observable_kets.size());
  for (Index i = 0; i < static_cast<Index>(set.input_kets.size()); ++i)
    for (Index o = 0; o < static_cast<Index>(set.observable_kets.size()); ++o)
      set.pairs.emplace_back(i, o);
  return set;
}

Complex SensingMatrix::entry(Index o, Index alpha, Index beta) const {
  // generators(o, a) = g_o[a]; entries are g_o[a] conj(g_o[b]) / sqrt(m).
  return generators(o, alpha) * std::conj(generators(o, beta)) /
         std::sqrt(static_cast<double>(m));
}

RealVector SensingMatrix::apply_unscaled(const ComplexMatrix& chi) const {
  return ((generators * chi).cwiseProduct(generators.conjugate())).rowwise().sum().real();
}

ComplexMatrix SensingMatrix::dense(bool scaled) const {
  const Index d2 = generators.cols();
  const double scale = scaled ? 1.0 : std::sqrt(static_cast<double>(m));
  ComplexMatrix out(m, d4);
  for (Index o = 0; o < m; ++o)
    for (Index a = 0; a < d2; ++a)
      for (Index b = 0; b < d2; ++b) out(o, a * d2 + b) = scale * entry(o, a, b);
  return out;
}

SensingMatrix sensing_matrix(const GammaBasis& basis, const ConfigurationSet& configs,
                             const std::vector<Index>& selected) {
  if (selected.empty()) throw ConfigError("sensing_matrix: selected rows must be nonempty");
  std::set<Index> seen;
  for (Index idx : selected) {
    if (idx < 0 || idx >= configs.m())
      throw ConfigError("sensing_matrix: selected index out of range");
    if (!seen.insert(idx).second) throw ConfigError("sensing_matrix: selected rows must be distinct");
  }
  const Index d2 = basis.size();
  if ((Index{1} << configs.n_qubits) != basis.d)
    throw DimensionError("sensing_matrix: basis and configuration dims differ");

  SensingMatrix phi;
  phi.m = static_cast<Index>(selected.size());
  phi.d4 = d2 * d2;
  phi.generators.resize(phi.m, d2);
  for (Index row = 0; row < phi.m; ++row) {
    const auto [in_idx, obs_idx] = configs.pairs[static_cast<std::size_t>(selected[row])];
    const ComplexVector& psi = configs.input_kets[static_cast<std::size_t>(in_idx)];
    const ComplexVector& phi_ket = configs.observable_kets[static_cast<std::size_t>(obs_idx)];
    for (Index a = 0; a < d2; ++a)
      phi.generators(row, a) = phi_ket.dot(basis.elements[static_cast<std::size_t>(a)] * psi);
  }
  return phi;
}

RankOneSensingOperator::RankOneSensingOperator(SensingMatrix phi, double scale)
    : phi_(std::move(phi)), scale_(scale), d2_(phi_.generators.cols()) {}

RealVector RankOneSensingOperator::apply(const ComplexMatrix& x) const {
  return scale_ * phi_.apply_unscaled(x);
}

ComplexMatrix RankOneSensingOperator::apply_adjoint(const RealVector& r) const {
  return scale_ * (phi_.generators.adjoint() * r.asDiagonal() * phi_.generators);
}

RealMatrix RankOneSensingOperator::gram() const {
  return scale_ * scale_ * (phi_.generators * phi_.generators.adjoint()).cwiseAbs2();
}

RealVector simulate_process_outcomes(const ProcessMatrix& process, const ConfigurationSet& configs,
                                     const std::vector<Index>& selected, ShotCount shots,
                                     const RealVector& corruption, std::uint64_t seed) {
  if (corruption.size() != static_cast<Index>(selected.size()))
    throw DimensionError("simulate_process_outcomes: corruption length mismatch");
  const SensingMatrix phi = sensing_matrix(process.basis, configs, selected);
  const RealVector exact = phi.apply_unscaled(process.chi.mat());
  return shot_estimate(exact, shots, ShotModel::ProjectorProbability, seed) + corruption;
}

RecoveryResult recover_process(const RealVector& y, const SensingMatrix& phi,
                               const GammaBasis& basis, double mu1, double mu2,
                               const SolverOptions& opts) {
  if (!(mu1 > 0) || !(mu2 > 0)) throw ConfigError("recover_process: mu1, mu2 must be positive");
  if (y.size() != phi.m) throw DimensionError("recover_process: data length mismatch");
  if (phi.generators.cols() != basis.size())
    throw DimensionError("recover_process: basis dim mismatch");

  const double scale = 1.0 / std::sqrt(static_cast<double>(phi.m));
  RecoveryProblem problem;
  problem.forward = std::make_shared<RankOneSensingOperator>(phi, scale);
  problem.data = scale * y;
  problem.reg_matrix = MatrixReg::EntrywiseL1;
  problem.reg_matrix_weight = mu1;
  problem.reg_vector_weight = mu2;
  problem.psd_cone = true;
  problem.affine = std::make_shared<TpConstraint>(basis);

  RecoveryResult result = solve(problem, opts);
  result.corruption_estimate /= scale;
  if (!result.converged)
    throw ConvergenceError("recover_process: no convergence within max_iters", std::move(result));
  return result;
}

}  // namespace cqpt

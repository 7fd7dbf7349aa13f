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

#include "cqpt/choi.hpp"

#include <cmath>
#include <memory>
#include <set>

#include "cqpt/rng.hpp"

namespace cqpt {

ChoiState::ChoiState(int n, HermitianMatrix m) : n_qubits(n), matrix(std::move(m)) {
  const Index d = Index{1} << n_qubits;
  if (matrix.dim() != d * d) throw DimensionError("ChoiState: matrix must be d^2 x d^2");
  if (std::abs(matrix.trace() - 1.0) > 1e-10) throw NumericalError("ChoiState: trace must be 1");
  if (min_eigenvalue(matrix.mat()) < -1e-10)
    throw NumericalError("ChoiState: matrix must be positive semidefinite");
}

PauliObservableSet::PauliObservableSet(int n, std::vector<PauliLabel> l)
    : n_qubits(n), labels(std::move(l)) {
  const Index d = Index{1} << n_qubits;
  const std::uint64_t total = static_cast<std::uint64_t>(d) * d * d * d;
  if (labels.empty() || labels.size() > total)
    throw ConfigError("PauliObservableSet: m must lie in [1, d^4]");
  std::set<std::uint64_t> seen;
  for (const PauliLabel& label : labels) {
    if (label.size() != 2 * n_qubits)
      throw ConfigError("PauliObservableSet: labels must cover system and ancilla wires");
    if (!seen.insert(label.index()).second)
      throw ConfigError("PauliObservableSet: labels must be distinct");
  }
}

std::vector<PauliTerm> PauliObservableSet::terms() const {
  std::vector<PauliTerm> out;
  out.reserve(labels.size());
  for (const PauliLabel& label : labels) out.push_back(pauli_term(label));
  return out;
}

ChoiState choi_of_unitary(const UnitaryGate& gate) {
  const Index d = gate.dim();
  ComplexVector psi = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  // (U (x) I) |Psi> reshapes to U / sqrt(d): component (i, j) is U(i, j)/sqrt(d).
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) psi[i * d + j] = amp * gate.matrix(i, j);
  return ChoiState(gate.n_qubits, HermitianMatrix::Symmetrized(psi * psi.adjoint()));
}

PauliObservableSet sample_pauli_settings(int n_qubits, Index m, std::uint64_t seed) {
  if (n_qubits < 1) throw ConfigError("sample_pauli_settings: need at least one qubit");
  return PauliObservableSet(n_qubits, sample_pauli_labels(2 * n_qubits, m, seed));
}

RealVector sensing_map_choi(const ChoiState& state, const PauliObservableSet& settings,
                            bool scaled) {
  if (settings.system_dim() != state.system_dim())
    throw DimensionError("sensing_map_choi: dimension mismatch");
  const double d2 = static_cast<double>(state.system_dim() * state.system_dim());
  const double scale = scaled ? std::sqrt(d2 / static_cast<double>(settings.m())) : 1.0;
  return pauli_map_apply(settings.terms(), state.matrix.mat(), scale);
}

RealVector simulate_choi_measurements(const ChoiState& state, const PauliObservableSet& settings,
                                      ShotCount shots, const RealVector& corruption,
                                      std::uint64_t seed) {
  if (corruption.size() != settings.m())
    throw DimensionError("simulate_choi_measurements: corruption length mismatch");
  const RealVector exact = sensing_map_choi(state, settings, /*scaled=*/false);
  return shot_estimate(exact, shots, ShotModel::PauliExpectation, seed) + corruption;
}

PauliSensingOperator::PauliSensingOperator(const PauliObservableSet& settings, double scale)
    : dim_(settings.system_dim() * settings.system_dim()),
      scale_(scale),
      terms_(settings.terms()) {}

RealVector PauliSensingOperator::apply(const ComplexMatrix& x) const {
  return pauli_map_apply(terms_, x, scale_);
}

ComplexMatrix PauliSensingOperator::apply_adjoint(const RealVector& r) const {
  return pauli_map_adjoint(terms_, r, scale_);
}

RealMatrix PauliSensingOperator::gram() const {
  return scale_ * scale_ * static_cast<double>(dim_) * RealMatrix::Identity(rows(), rows());
}

bool PauliSensingOperator::gram_is_scaled_identity(double* factor) const {
  if (factor != nullptr) *factor = scale_ * scale_ * static_cast<double>(dim_);
  return true;
}

RecoveryResult recover_choi(const RealVector& y, const PauliObservableSet& settings, double tau1,
                            double tau2, const SolverOptions& opts, bool include_trace_norm) {
  if (!(tau1 > 0) || !(tau2 > 0)) throw ConfigError("recover_choi: tau1, tau2 must be positive");
  if (y.size() != settings.m()) throw DimensionError("recover_choi: data length mismatch");

  const Index d = settings.system_dim();
  const double scale =
      std::sqrt(static_cast<double>(d * d) / static_cast<double>(settings.m()));
  RecoveryProblem problem;
  problem.forward = std::make_shared<PauliSensingOperator>(settings, scale);
  problem.data = scale * y;
  problem.reg_matrix = include_trace_norm ? MatrixReg::TraceNorm : MatrixReg::None;
  problem.reg_matrix_weight = include_trace_norm ? tau1 : 0.0;
  problem.reg_vector_weight = tau2;
  problem.psd_cone = true;
  problem.affine = std::make_shared<PartialTraceConstraint>(d, d);

  RecoveryResult result = solve(problem, opts);
  result.corruption_estimate /= scale;
  if (!result.converged)
    throw ConvergenceError("recover_choi: no convergence within max_iters", std::move(result));
  return result;
}

}  // namespace cqpt

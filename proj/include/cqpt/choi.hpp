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

#pragma once

#include <cstdint>
#include <vector>

#include "cqpt/gates.hpp"
#include "cqpt/noise.hpp"
#include "cqpt/pauli.hpp"
#include "cqpt/solver.hpp"

namespace cqpt {

/// State representation of a channel on n qubits: a d^2 x d^2 density matrix
/// (d = 2^n) with unit trace and a PSD spectrum, which carries the channel
/// completely. Unitary channels give rank one.
struct ChoiState {
  int n_qubits;
  HermitianMatrix matrix;

  ChoiState(int n, HermitianMatrix m);
  Index system_dim() const { return Index{1} << n_qubits; }
};

/// m distinct Pauli words on system (+) ancilla wires, each of 2 n_qubits letters.
struct PauliObservableSet {
  int n_qubits;
  std::vector<PauliLabel> labels;

  PauliObservableSet(int n, std::vector<PauliLabel> l);
  Index m() const { return static_cast<Index>(labels.size()); }
  Index system_dim() const { return Index{1} << n_qubits; }
  std::vector<PauliTerm> terms() const;
};

/// Sends half of the maximally entangled pair through the unitary channel:
/// (U (x) I) |Psi><Psi| (U^dag (x) I).
ChoiState choi_of_unitary(const UnitaryGate& gate);

/// m distinct observables drawn uniformly without replacement from the d^4
/// words; deterministic given the seed.
PauliObservableSet sample_pauli_settings(int n_qubits, Index m, std::uint64_t seed);

/// Component i is Tr(W_i rho), multiplied by sqrt(d^2/m) when `scaled`
/// (the isometry normalization) and raw otherwise (the estimator convention).
RealVector sensing_map_choi(const ChoiState& state, const PauliObservableSet& settings,
                            bool scaled);

/// y_i = estimate of Tr(W_i rho) from `shots` repetitions, plus corruption[i].
RealVector simulate_choi_measurements(const ChoiState& state, const PauliObservableSet& settings,
                                      ShotCount shots, const RealVector& corruption,
                                      std::uint64_t seed);

/// Measurement map rho -> scale * (Tr(W_1 rho), ..., Tr(W_m rho)); the Gram
/// matrix is scale^2 d^2 * I because distinct Pauli words are trace-orthogonal.
class PauliSensingOperator : public SensingOperator {
 public:
  explicit PauliSensingOperator(const PauliObservableSet& settings, double scale = 1.0);
  Index dim() const override { return dim_; }
  Index rows() const override { return static_cast<Index>(terms_.size()); }
  RealVector apply(const ComplexMatrix& x) const override;
  ComplexMatrix apply_adjoint(const RealVector& r) const override;
  RealMatrix gram() const override;
  bool gram_is_scaled_identity(double* factor) const override;

 private:
  Index dim_;
  double scale_;
  std::vector<PauliTerm> terms_;
};

/// Joint estimate of the channel state and the sparse corruption, solved in
/// the row-normalized frame the regularization constants are calibrated for:
///   min 1/2 ||c y - Lambda(rho) - v'||^2 + tau1 ||rho||_tr + tau2 ||v'||_1
///   s.t. rho PSD, Tr_S(rho) = I/d,
/// with Lambda the scaled map (c = sqrt(d^2/m)). The returned corruption
/// estimate is mapped back to the outcome scale (v = v'/c). The trace-norm
/// term is constant on the feasible set and may be switched off.
RecoveryResult recover_choi(const RealVector& y, const PauliObservableSet& settings, double tau1,
                            double tau2, const SolverOptions& opts,
                            bool include_trace_norm = true);

}  // namespace cqpt

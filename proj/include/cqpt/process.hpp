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
#include <string>
#include <utility>
#include <vector>

#include "cqpt/gamma.hpp"
#include "cqpt/noise.hpp"
#include "cqpt/solver.hpp"

namespace cqpt {

/// Channel coefficients chi in a declared Gamma basis; PSD, with
/// Tr(chi) = d / norm_const (1 for Pauli, d for Computational/Svd).
struct ProcessMatrix {
  GammaBasis basis;
  HermitianMatrix chi;

  ProcessMatrix(GammaBasis b, HermitianMatrix c);
  Index d() const { return basis.d; }
};

/// Rank-one coefficient matrix of a unitary channel: chi = e e^dag with
/// e_a = Tr(Gamma_a^dag U) / norm_const.
ProcessMatrix process_matrix_of_unitary(const UnitaryGate& gate, const GammaBasis& basis);

/// sum_ab chi_ab Gamma_a rho Gamma_b^dag.
ComplexMatrix apply_channel(const ProcessMatrix& process, const ComplexMatrix& rho);

/// Frobenius norm of sum_ab chi_ab Gamma_b^dag Gamma_a - I.
double tp_residual(const ComplexMatrix& chi, const GammaBasis& basis);

/// Tomographic probe set: rank-one input states and projector observables,
/// paired as the full Cartesian product (input-major order).
struct ConfigurationSet {
  int n_qubits;
  std::vector<ComplexVector> input_kets;
  std::vector<ComplexVector> observable_kets;
  std::vector<std::string> input_labels;
  std::vector<std::string> observable_labels;
  std::vector<std::pair<Index, Index>> pairs;

  Index m() const { return static_cast<Index>(pairs.size()); }
};

/// Polarization-encoded probes: n = 2 uses the fixed 16-input / 16-observable
/// lists; n = 3, 4 use all tensor products of {H, V, D, R} per qubit for both.
ConfigurationSet build_configuration_set(int n_qubits);

/// Single-qubit polarization ket for a letter in {H, V, D, A, R, L}.
ComplexVector polarization_ket(char letter);

/// Tensor-product ket for a label like "DA".
ComplexVector ket_for_label(const std::string& label);

/// Measurement matrix of the probe scheme. Row o is the rank-one form
/// entry(o, a, b) = Tr(Gamma_a rho_o Gamma_b^dag M_o) / sqrt(m)
///                = g_o[a] * conj(g_o[b]) / sqrt(m),  g_o[a] = <phi_o|Gamma_a|psi_o>,
/// so only the m x d^2 generator matrix is stored; applications are quadratic
/// forms in the generators.
struct SensingMatrix {
  Index m = 0;
  Index d4 = 0;
  ComplexMatrix generators;  ///< m x d^2, row o holds g_o

  Complex entry(Index o, Index alpha, Index beta) const;  ///< scaled by 1/sqrt(m)
  RealVector apply_unscaled(const ComplexMatrix& chi) const;
  /// Dense m x d^4 matrix with columns flattened as alpha*d^2+beta; intended
  /// for tests and small problems.
  ComplexMatrix dense(bool scaled) const;
};

/// Rows indexed by `selected` (distinct indices into configs.pairs).
SensingMatrix sensing_matrix(const GammaBasis& basis, const ConfigurationSet& configs,
                             const std::vector<Index>& selected);

/// Measurement map chi -> scale * (Tr(M_o E(rho_o)))_o built from a SensingMatrix.
class RankOneSensingOperator : public SensingOperator {
 public:
  explicit RankOneSensingOperator(SensingMatrix phi, double scale = 1.0);
  Index dim() const override { return d2_; }
  Index rows() const override { return phi_.m; }
  RealVector apply(const ComplexMatrix& x) const override;
  ComplexMatrix apply_adjoint(const RealVector& r) const override;
  RealMatrix gram() const override;

 private:
  SensingMatrix phi_;
  double scale_;
  Index d2_;
};

/// y_o = shot estimate of Tr(M_o E(rho_o)) plus corruption[o]. Outcomes are
/// projector probabilities in [0, 1].
RealVector simulate_process_outcomes(const ProcessMatrix& process, const ConfigurationSet& configs,
                                     const std::vector<Index>& selected, ShotCount shots,
                                     const RealVector& corruption, std::uint64_t seed);

/// Joint estimate of the process matrix and the sparse corruption, solved in
/// the row-normalized frame the regularization constants are calibrated for:
///   min 1/2 ||y/sqrt(m) - Phi vec(chi) - v'||^2 + mu1 ||vec(chi)||_1 + mu2 ||v'||_1
///   s.t. chi PSD, sum_ab chi_ab Gamma_b^dag Gamma_a = I,
/// with Phi carrying the 1/sqrt(m) row normalization. The returned corruption
/// estimate is mapped back to the outcome scale (v = sqrt(m) v').
RecoveryResult recover_process(const RealVector& y, const SensingMatrix& phi,
                               const GammaBasis& basis, double mu1, double mu2,
                               const SolverOptions& opts);

}  // namespace cqpt

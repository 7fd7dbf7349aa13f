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
#include <functional>

#include "cqpt/linalg.hpp"

namespace cqpt {

/// Squared fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1]. Inputs must be
/// PSD within tolerance with equal traces (within 1e-6); eigenvalues are
/// clamped at zero before the square roots.
double fidelity(const HermitianMatrix& a, const HermitianMatrix& b);

/// Fidelity of a/Tr(a) vs b/Tr(b); the right comparison for process matrices,
/// whose trace convention depends on the basis.
double fidelity_normalized(const HermitianMatrix& a, const HermitianMatrix& b);

/// (1/m) sum_i (v_i - v_hat_i)^2.
double mse(const RealVector& v_true, const RealVector& v_hat);

/// A scaled measurement map rho -> sqrt(dim/m) (Tr(S_1 rho), ...) exposed to
/// the isometry-defect estimator.
struct GripMap {
  Index dim = 0;  ///< matrix side
  Index m = 0;    ///< number of measurement rows
  std::function<RealVector(const ComplexMatrix&)> apply;
};

/// Monte Carlo lower bound on the joint isometry defect of the extended map
/// [A, I]; the supremum itself is not computable, so these are running maxima
/// over sampled (matrix, sparse-vector) pairs, never the exact constant.
struct GripEstimate {
  double delta1 = 0;       ///< max |  ||A(rho)||^2 - ||rho||_F^2  |
  double delta2 = 0;       ///< max 2 |<A(rho), v>|
  double delta_total = 0;  ///< max | ||[A,I][rho;v]||^2 - ||rho||_F^2 - ||v||^2 |
  double delta2_bound_ratio = 0;  ///< max of delta2 draw / (2 sqrt(dim*s) ||v||_inf)
  int trials = 0;
  int r = 0;
  int s = 0;
  Index m = 0;
};

/// Samples rank-<=r PSD matrices (Haar eigenvectors, uniform simplex spectrum)
/// and s-sparse unit vectors, jointly normalized to ||rho||_F^2 + ||v||^2 = 1,
/// and records the defect components per draw. s = 0 forces v = 0.
GripEstimate empirical_grip(const GripMap& map, int r, int s, int trials, std::uint64_t seed);

/// Scaled Pauli map on `n_letters` wires with m sampled words: the GRIP probe
/// for both the channel-state scheme (2n letters) and the state scheme (n).
GripMap make_pauli_grip_map(int n_letters, Index m, std::uint64_t seed);

}  // namespace cqpt

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

#include <string>
#include <vector>

#include "cqpt/gates.hpp"
#include "cqpt/linalg.hpp"

namespace cqpt {

enum class BasisKind { Pauli, Computational, Svd };

/// Operator basis {Gamma_a} of d x d matrices, trace-orthogonal with
/// Tr(Gamma_b^dag Gamma_a) = norm_const * delta_ab.
struct GammaBasis {
  BasisKind kind;
  Index d;
  std::vector<ComplexMatrix> elements;  ///< exactly d^2 entries
  double norm_const;                    ///< d for Pauli, 1 for Computational/Svd
  std::vector<std::string> labels;      ///< element names, for reports

  Index size() const { return static_cast<Index>(elements.size()); }
};

/// Pauli order is "II, IX, IY, IZ, XI, ..."; computational order is |i><j| with
/// (i, j) row-major. The Svd kind is gate-specific and requires `reference`:
/// its elements mix the computational ones by the eigenvectors of the
/// reference gate's computational-basis coefficient matrix, so the gate itself
/// becomes sqrt(d) times the first element.
GammaBasis gamma_basis(BasisKind kind, Index d, const UnitaryGate* reference = nullptr);

/// Expansion coefficients of U: e_a = Tr(Gamma_a^dag U) / norm_const.
ComplexVector expansion_coefficients(const GammaBasis& basis, const ComplexMatrix& u);

std::string basis_kind_name(BasisKind kind);
BasisKind basis_kind_from_name(const std::string& name);

}  // namespace cqpt

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
#include <vector>

#include "cqpt/linalg.hpp"

namespace cqpt {

/// Word over {I, X, Y, Z}; leftmost letter acts on the most significant qubit.
class PauliLabel {
 public:
  explicit PauliLabel(std::string letters);

  /// Inverse of index(): base-4 digits I=0, X=1, Y=2, Z=3, leftmost letter most
  /// significant. Enumerating indices 0..4^n-1 yields the canonical ordering
  /// "II, IX, IY, IZ, XI, ...".
  static PauliLabel from_index(std::uint64_t index, int n_letters);

  std::uint64_t index() const;
  int size() const { return static_cast<int>(letters_.size()); }
  char letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }
  const std::string& str() const { return letters_; }

  bool operator==(const PauliLabel& other) const { return letters_ == other.letters_; }

 private:
  std::string letters_;
};

/// Bitmask form of a Pauli word on n qubits (dim = 2^n). The operator has one
/// nonzero per column: W|k> = phase(k) |k ^ flipmask>.
struct PauliTerm {
  std::uint64_t xmask = 0;  ///< qubits carrying X
  std::uint64_t ymask = 0;  ///< qubits carrying Y
  std::uint64_t zmask = 0;  ///< qubits carrying Z
  Index dim = 1;

  std::uint64_t flipmask() const { return xmask | ymask; }
  Complex phase(std::uint64_t col) const;
};

PauliTerm pauli_term(const PauliLabel& label);

/// Dense tensor product of the single-qubit Paulis in label order.
HermitianMatrix pauli_operator(const PauliLabel& label);

/// Tr(W rho); real part only (exact for Hermitian rho).
double pauli_expectation(const PauliTerm& term, const ComplexMatrix& rho);

/// scale * (Tr(W_1 rho), ..., Tr(W_m rho)).
RealVector pauli_map_apply(const std::vector<PauliTerm>& terms, const ComplexMatrix& rho,
                           double scale);

/// Accumulates sum_i r_i W_i into a dense matrix.
ComplexMatrix pauli_map_adjoint(const std::vector<PauliTerm>& terms, const RealVector& r,
                                double scale);

/// m distinct labels of n_letters letters, drawn uniformly without replacement.
std::vector<PauliLabel> sample_pauli_labels(int n_letters, Index m, std::uint64_t seed);

}  // namespace cqpt

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

#include "cqpt/linalg.hpp"

namespace cqpt {

enum class GateId { Cnot, Cz, Swap, Toffoli, Fredkin, Cccz, Identity };

/// Unitary on n qubits; matrix dim 2^n, validated as unitary on construction.
struct UnitaryGate {
  GateId id;
  int n_qubits;
  ComplexMatrix matrix;

  Index dim() const { return matrix.rows(); }
};

/// Catalog gate with its standard qubit count (Identity is single-qubit).
UnitaryGate make_gate(GateId id);

/// n-qubit identity gate.
UnitaryGate identity_gate(int n_qubits);

std::string gate_name(GateId id);
GateId gate_from_name(const std::string& name);

}  // namespace cqpt

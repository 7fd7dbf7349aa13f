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

#include "cqpt/gates.hpp"

#include <algorithm>
#include <cctype>

namespace cqpt {

namespace {

UnitaryGate checked(GateId id, int n_qubits, ComplexMatrix m) {
  const Index d = Index{1} << n_qubits;
  if (m.rows() != d || m.cols() != d) throw DimensionError("gate: matrix dim mismatch");
  if ((m.adjoint() * m - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
    throw NumericalError("gate: matrix is not unitary");
  return UnitaryGate{id, n_qubits, std::move(m)};
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(2, 3) = 1;
  u(3, 2) = 1;
  return u;
}

ComplexMatrix swap_matrix() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 2) = 1;
  u(2, 1) = 1;
  u(3, 3) = 1;
  return u;
}

/// |0><0| (x) I_4 + |1><1| (x) lower, the controlled extension of a two-qubit gate.
ComplexMatrix controlled(const ComplexMatrix& lower) {
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  u.block(4, 4, 4, 4) = lower;
  return u;
}

}  // namespace

UnitaryGate make_gate(GateId id) {
  switch (id) {
    case GateId::Cnot:
      return checked(id, 2, cnot_matrix());
    case GateId::Cz: {
      ComplexMatrix u = ComplexMatrix::Identity(4, 4);
      u(3, 3) = -1;
      return checked(id, 2, std::move(u));
    }
    case GateId::Swap:
      return checked(id, 2, swap_matrix());
    case GateId::Toffoli:
      return checked(id, 3, controlled(cnot_matrix()));
    case GateId::Fredkin:
      return checked(id, 3, controlled(swap_matrix()));
    case GateId::Cccz: {
      ComplexMatrix u = ComplexMatrix::Identity(16, 16);
      u(15, 15) = -1;
      return checked(id, 4, std::move(u));
    }
    case GateId::Identity:
      return checked(id, 1, ComplexMatrix::Identity(2, 2));
  }
  throw ConfigError("make_gate: unknown gate id");
}

UnitaryGate identity_gate(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12) throw ConfigError("identity_gate: qubit count out of range");
  const Index d = Index{1} << n_qubits;
  return UnitaryGate{GateId::Identity, n_qubits, ComplexMatrix::Identity(d, d)};
}

std::string gate_name(GateId id) {
  switch (id) {
    case GateId::Cnot: return "cnot";
    case GateId::Cz: return "cz";
    case GateId::Swap: return "swap";
    case GateId::Toffoli: return "toffoli";
    case GateId::Fredkin: return "fredkin";
    case GateId::Cccz: return "cccz";
    case GateId::Identity: return "identity";
  }
  throw ConfigError("gate_name: unknown gate id");
}

GateId gate_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "cnot") return GateId::Cnot;
  if (s == "cz") return GateId::Cz;
  if (s == "swap") return GateId::Swap;
  if (s == "toffoli") return GateId::Toffoli;
  if (s == "fredkin") return GateId::Fredkin;
  if (s == "cccz") return GateId::Cccz;
  if (s == "identity") return GateId::Identity;
  throw ConfigError("unknown gate name: " + name);
}

}  // namespace cqpt

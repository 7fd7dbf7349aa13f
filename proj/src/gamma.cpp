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

#include "cqpt/gamma.hpp"

#include <algorithm>
#include <cctype>

#include "cqpt/pauli.hpp"

namespace cqpt {

namespace {

bool is_power_of_two(Index d) { return d >= 1 && (d & (d - 1)) == 0; }

int log2_index(Index d) {
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  return n;
}

GammaBasis pauli_basis(Index d) {
  const int n = log2_index(d);
  GammaBasis basis{BasisKind::Pauli, d, {}, static_cast<double>(d), {}};
  basis.elements.reserve(static_cast<std::size_t>(d) * d);
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(d) * d; ++idx) {
    const PauliLabel label = PauliLabel::from_index(idx, n);
    basis.elements.push_back(pauli_operator(label).mat());
    basis.labels.push_back(label.str());
  }
  return basis;
}

GammaBasis computational_basis(Index d) {
  GammaBasis basis{BasisKind::Computational, d, {}, 1.0, {}};
  basis.elements.reserve(static_cast<std::size_t>(d) * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1;
      basis.elements.push_back(std::move(e));
      basis.labels.push_back("|" + std::to_string(i) + "><" + std::to_string(j) + "|");
    }
  return basis;
}

GammaBasis svd_basis(const UnitaryGate& reference) {
  const Index d = reference.dim();
  const Index d2 = d * d;
  const GammaBasis comp = computational_basis(d);

  // Coefficient matrix of the reference gate in the computational basis is
  // rank one; its top eigenvector fixes the leading Svd element.
  const ComplexVector e = expansion_coefficients(comp, reference.matrix);
  const ComplexMatrix chi_comp = e * e.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(chi_comp);
  if (eig.info() != Eigen::Success) throw NumericalError("svd basis: eigensolver failed");

  // Descending eigenvalue order, with each column's largest entry made real
  // positive for a deterministic phase convention.
  ComplexMatrix v(d2, d2);
  for (Index a = 0; a < d2; ++a) {
    ComplexVector col = eig.eigenvectors().col(d2 - 1 - a);
    Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = col[imax];
    if (std::abs(pivot) > 0) col *= std::conj(pivot) / std::abs(pivot);
    v.col(a) = col;
  }

  GammaBasis basis{BasisKind::Svd, d, {}, 1.0, {}};
  basis.elements.reserve(static_cast<std::size_t>(d2));
  for (Index a = 0; a < d2; ++a) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (Index b = 0; b < d2; ++b) g += v(b, a) * comp.elements[static_cast<std::size_t>(b)];
    basis.elements.push_back(std::move(g));
    basis.labels.push_back("S" + std::to_string(a));
  }
  return basis;
}

}  // namespace

GammaBasis gamma_basis(BasisKind kind, Index d, const UnitaryGate* reference) {
  if (!is_power_of_two(d)) throw ConfigError("gamma_basis: d must be a power of two");
  switch (kind) {
    case BasisKind::Pauli: return pauli_basis(d);
    case BasisKind::Computational: return computational_basis(d);
    case BasisKind::Svd:
      if (reference == nullptr)
        throw ConfigError("gamma_basis: Svd kind requires a reference gate");
      if (reference->dim() != d) throw DimensionError("gamma_basis: reference gate dim mismatch");
      return svd_basis(*reference);
  }
  throw ConfigError("gamma_basis: unknown kind");
}

ComplexVector expansion_coefficients(const GammaBasis& basis, const ComplexMatrix& u) {
  if (u.rows() != basis.d || u.cols() != basis.d)
    throw DimensionError("expansion_coefficients: dimension mismatch");
  ComplexVector e(basis.size());
  for (Index a = 0; a < basis.size(); ++a)
    e[a] = (basis.elements[static_cast<std::size_t>(a)].adjoint() * u).trace() / basis.norm_const;
  return e;
}

std::string basis_kind_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::Pauli: return "pauli";
    case BasisKind::Computational: return "computational";
    case BasisKind::Svd: return "svd";
  }
  throw ConfigError("basis_kind_name: unknown kind");
}

BasisKind basis_kind_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "pauli") return BasisKind::Pauli;
  if (s == "computational") return BasisKind::Computational;
  if (s == "svd") return BasisKind::Svd;
  throw ConfigError("unknown basis kind: " + name);
}

}  // namespace cqpt

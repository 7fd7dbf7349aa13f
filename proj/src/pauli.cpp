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

#include "cqpt/pauli.hpp"

#include <bit>

#include "cqpt/rng.hpp"

namespace cqpt {

namespace {

int letter_digit(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw ConfigError(std::string("PauliLabel: invalid letter '") + c + "'");
  }
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

}  // namespace

PauliLabel::PauliLabel(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ConfigError("PauliLabel: empty label");
  if (letters_.size() > 16) throw ConfigError("PauliLabel: more than 16 letters unsupported");
  for (char c : letters_) letter_digit(c);
}

PauliLabel PauliLabel::from_index(std::uint64_t index, int n_letters) {
  if (n_letters < 1) throw ConfigError("PauliLabel::from_index: need at least one letter");
  std::string s(static_cast<std::size_t>(n_letters), 'I');
  for (int q = n_letters - 1; q >= 0; --q) {
    s[static_cast<std::size_t>(q)] = kLetters[index & 3];
    index >>= 2;
  }
  if (index != 0) throw ConfigError("PauliLabel::from_index: index out of range");
  return PauliLabel(s);
}

std::uint64_t PauliLabel::index() const {
  std::uint64_t idx = 0;
  for (char c : letters_) idx = (idx << 2) | static_cast<std::uint64_t>(letter_digit(c));
  return idx;
}

PauliTerm pauli_term(const PauliLabel& label) {
  PauliTerm t;
  const int n = label.size();
  t.dim = Index{1} << n;
  for (int q = 0; q < n; ++q) {
    // Letter q acts on bit (n-1-q): leftmost letter = most significant bit.
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (label.letter(q)) {
      case 'X': t.xmask |= bit; break;
      case 'Y': t.ymask |= bit; break;
      case 'Z': t.zmask |= bit; break;
      default: break;
    }
  }
  return t;
}

Complex PauliTerm::phase(std::uint64_t col) const {
  // Each Y contributes i * (-1)^bit, each Z contributes (-1)^bit.
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ny = std::popcount(ymask);
  const int sign_bits = std::popcount(col & (ymask | zmask));
  Complex p = kIPow[ny & 3];
  return (sign_bits & 1) ? -p : p;
}

HermitianMatrix pauli_operator(const PauliLabel& label) {
  const PauliTerm t = pauli_term(label);
  ComplexMatrix w = ComplexMatrix::Zero(t.dim, t.dim);
  const std::uint64_t flip = t.flipmask();
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(t.dim); ++k)
    w(static_cast<Index>(k ^ flip), static_cast<Index>(k)) = t.phase(k);
  return HermitianMatrix(std::move(w));
}

double pauli_expectation(const PauliTerm& term, const ComplexMatrix& rho) {
  if (rho.rows() != term.dim || rho.cols() != term.dim)
    throw DimensionError("pauli_expectation: dimension mismatch");
  const std::uint64_t flip = term.flipmask();
  Complex acc = 0;
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(term.dim); ++k)
    acc += term.phase(k) * rho(static_cast<Index>(k), static_cast<Index>(k ^ flip));
  return acc.real();
}

RealVector pauli_map_apply(const std::vector<PauliTerm>& terms, const ComplexMatrix& rho,
                           double scale) {
  RealVector out(static_cast<Index>(terms.size()));
  for (std::size_t i = 0; i < terms.size(); ++i)
    out[static_cast<Index>(i)] = scale * pauli_expectation(terms[i], rho);
  return out;
}

ComplexMatrix pauli_map_adjoint(const std::vector<PauliTerm>& terms, const RealVector& r,
                                double scale) {
  if (r.size() != static_cast<Index>(terms.size()))
    throw DimensionError("pauli_map_adjoint: coefficient count mismatch");
  const Index dim = terms.empty() ? 0 : terms.front().dim;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const PauliTerm& t = terms[i];
    const std::uint64_t flip = t.flipmask();
    const double c = scale * r[static_cast<Index>(i)];
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k)
      out(static_cast<Index>(k ^ flip), static_cast<Index>(k)) += c * t.phase(k);
  }
  return out;
}

std::vector<PauliLabel> sample_pauli_labels(int n_letters, Index m, std::uint64_t seed) {
  if (n_letters < 1 || n_letters > 12)
    throw ConfigError("sample_pauli_labels: letter count out of range");
  const std::uint64_t total = std::uint64_t{1} << (2 * n_letters);
  if (m < 1 || static_cast<std::uint64_t>(m) > total)
    throw ConfigError("sample_pauli_labels: m exceeds the number of distinct labels");
  Rng rng(seed);
  const auto picks = rng.sample_without_replacement(static_cast<std::size_t>(total),
                                                    static_cast<std::size_t>(m));
  std::vector<PauliLabel> labels;
  labels.reserve(picks.size());
  for (std::size_t idx : picks) labels.push_back(PauliLabel::from_index(idx, n_letters));
  return labels;
}

}  // namespace cqpt

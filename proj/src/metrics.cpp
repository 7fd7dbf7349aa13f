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

#include "cqpt/metrics.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "cqpt/pauli.hpp"
#include "cqpt/rng.hpp"

namespace cqpt {

namespace {

constexpr double kPsdTol = 1e-6;

/// Eigenvalues below a relative cutoff are zeroed before the square root;
/// otherwise rank-deficient inputs pick up sqrt(eps)-sized spurious roots.
RealVector clamped_spectrum(const RealVector& lam) {
  const double cutoff = 1e-12 * std::max(lam.maxCoeff(), 0.0);
  RealVector out = lam;
  for (Index i = 0; i < out.size(); ++i) out[i] = out[i] <= cutoff ? 0.0 : out[i];
  return out;
}

ComplexMatrix sqrt_psd(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.mat());
  if (eig.info() != Eigen::Success) throw NumericalError("fidelity: eigensolver failed");
  if (eig.eigenvalues().minCoeff() < -kPsdTol)
    throw NumericalError("fidelity: input has negative eigenvalues beyond tolerance");
  const RealVector lam = clamped_spectrum(eig.eigenvalues()).cwiseSqrt();
  return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  if (std::abs(a.trace() - b.trace()) > 1e-6)
    throw NumericalError("fidelity: traces differ beyond tolerance");
  const ComplexMatrix root = sqrt_psd(a);
  const ComplexMatrix inner = hermitize(root * b.mat() * root);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(inner, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("fidelity: eigensolver failed");
  if (eig.eigenvalues().minCoeff() < -kPsdTol)
    throw NumericalError("fidelity: inner matrix has negative eigenvalues beyond tolerance");
  const double root_sum = clamped_spectrum(eig.eigenvalues()).cwiseSqrt().sum();
  const double f = root_sum * root_sum;
  if (f > 1.0 + 1e-9) throw NumericalError("fidelity: value exceeds 1 beyond tolerance");
  return std::min(1.0, std::max(0.0, f));
}

double fidelity_normalized(const HermitianMatrix& a, const HermitianMatrix& b) {
  const double ta = a.trace(), tb = b.trace();
  if (!(ta > 0) || !(tb > 0)) throw NumericalError("fidelity_normalized: nonpositive trace");
  return fidelity(HermitianMatrix::Symmetrized(a.mat() / ta),
                  HermitianMatrix::Symmetrized(b.mat() / tb));
}

double mse(const RealVector& v_true, const RealVector& v_hat) {
  if (v_true.size() != v_hat.size()) throw DimensionError("mse: length mismatch");
  if (v_true.size() == 0) throw DimensionError("mse: empty vectors");
  return (v_true - v_hat).squaredNorm() / static_cast<double>(v_true.size());
}

GripEstimate empirical_grip(const GripMap& map, int r, int s, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("empirical_grip: trials must be >= 1");
  if (r < 1 || r > map.dim) throw ConfigError("empirical_grip: rank out of range");
  if (s < 0 || s > map.m) throw ConfigError("empirical_grip: sparsity out of range");
  if (!map.apply) throw ConfigError("empirical_grip: map is empty");

  Rng rng(seed);
  GripEstimate est;
  est.trials = trials;
  est.r = r;
  est.s = s;
  est.m = map.m;

  const Index dim = map.dim;
  for (int trial = 0; trial < trials; ++trial) {
    // Haar-distributed orthonormal columns: QR of a complex Ginibre block.
    ComplexMatrix g(dim, r);
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, r);

    // Uniform simplex spectrum via normalized exponentials.
    RealVector lam(r);
    for (Index j = 0; j < r; ++j) lam[j] = -std::log(rng.uniform_pos());
    lam /= lam.sum();
    ComplexMatrix rho = q * lam.asDiagonal() * q.adjoint();

    RealVector v = RealVector::Zero(map.m);
    if (s > 0) {
      const auto support = rng.sample_without_replacement(static_cast<std::size_t>(map.m),
                                                          static_cast<std::size_t>(s));
      for (std::size_t idx : support) v[static_cast<Index>(idx)] = rng.normal();
      v /= v.norm();
    }

    // Joint normalization ||rho||_F^2 + ||v||^2 = 1.
    const double t = s > 0 ? rng.uniform() : 1.0;
    rho *= std::sqrt(t) / rho.norm();
    v *= std::sqrt(1.0 - t);

    const RealVector u = map.apply(rho);
    const double d1 = std::abs(u.squaredNorm() - t);
    const double cross = 2.0 * std::abs(u.dot(v));
    const double dt = std::abs(u.squaredNorm() + 2.0 * u.dot(v) - t);
    est.delta1 = std::max(est.delta1, d1);
    est.delta2 = std::max(est.delta2, cross);
    est.delta_total = std::max(est.delta_total, dt);
    if (s > 0) {
      const double bound =
          2.0 * std::sqrt(static_cast<double>(dim) * s) * v.cwiseAbs().maxCoeff();
      if (bound > 0) est.delta2_bound_ratio = std::max(est.delta2_bound_ratio, cross / bound);
    }
  }
  return est;
}

GripMap make_pauli_grip_map(int n_letters, Index m, std::uint64_t seed) {
  const std::vector<PauliLabel> labels = sample_pauli_labels(n_letters, m, seed);
  auto terms = std::make_shared<std::vector<PauliTerm>>();
  terms->reserve(labels.size());
  for (const PauliLabel& label : labels) terms->push_back(pauli_term(label));

  GripMap map;
  map.dim = Index{1} << n_letters;
  map.m = m;
  const double scale = std::sqrt(static_cast<double>(map.dim) / static_cast<double>(m));
  map.apply = [terms, scale](const ComplexMatrix& rho) {
    return pauli_map_apply(*terms, rho, scale);
  };
  return map;
}

}  // namespace cqpt

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

#include <Eigen/Dense>
#include <complex>

#include "cqpt/errors.hpp"

namespace cqpt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Kronecker product: (a (x) b)[i*rb+k][j*cb+l] = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
ComplexMatrix tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Index i = 0; i < ra; ++i)
    for (Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = Complex(a(i, j)) * b.template cast<Complex>();
  return out;
}

/// (A + A^dag) / 2. Suppresses 1e-15-scale conjugate-symmetry drift.
inline ComplexMatrix hermitize(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

inline double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Square complex matrix with conjugate symmetry, validated on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw DimensionError("HermitianMatrix: matrix must be square and non-empty");
    if (hermiticity_defect(m_) > tol)
      throw NumericalError("HermitianMatrix: conjugate symmetry violated beyond tolerance");
  }

  /// Builds from (m + m^dag)/2 without a tolerance check.
  static HermitianMatrix Symmetrized(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols())
      throw DimensionError("HermitianMatrix: matrix must be square and non-empty");
    HermitianMatrix h;
    h.m_ = hermitize(m);
    return h;
  }

  const ComplexMatrix& mat() const { return m_; }
  Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

/// Traces out the first (system) tensor factor; returns the d_anc x d_anc reduction.
inline HermitianMatrix partial_trace_system(const HermitianMatrix& rho, Index d_sys, Index d_anc) {
  if (d_sys < 1 || d_anc < 1 || rho.dim() != d_sys * d_anc)
    throw DimensionError("partial_trace_system: dim must equal d_sys * d_anc");
  ComplexMatrix out = ComplexMatrix::Zero(d_anc, d_anc);
  for (Index s = 0; s < d_sys; ++s)
    out += rho.mat().block(s * d_anc, s * d_anc, d_anc, d_anc);
  return HermitianMatrix::Symmetrized(out);
}

/// Frobenius-nearest positive semidefinite matrix: eigendecompose and clamp
/// negative eigenvalues to zero.
inline HermitianMatrix project_psd(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h.mat());
  if (eig.info() != Eigen::Success) throw NumericalError("project_psd: eigensolver failed");
  const RealVector lam = eig.eigenvalues().cwiseMax(0.0);
  return HermitianMatrix::Symmetrized(eig.eigenvectors() * lam.asDiagonal() *
                                      eig.eigenvectors().adjoint());
}

/// Sum of singular values, Tr sqrt(M^dag M).
inline double trace_norm(const ComplexMatrix& m) {
  return m.jacobiSvd().singularValues().sum();
}

inline double min_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver failed");
  return eig.eigenvalues().minCoeff();
}

/// Row-major flattening: vec(m)[i*cols + j] = m(i, j).
inline ComplexVector vec_rowmajor(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

inline ComplexMatrix unvec_rowmajor(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec_rowmajor: size mismatch");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

}  // namespace cqpt

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

#include <Eigen/SparseCore>
#include <memory>

#include "cqpt/gamma.hpp"
#include "cqpt/linalg.hpp"

namespace cqpt {

/// Entrywise soft-threshold sign(x) * max(|x| - threshold, 0).
RealVector prox_l1(const RealVector& x, double threshold);

/// Complex soft-threshold z * max(1 - threshold/|z|, 0) per entry; preserves
/// conjugate symmetry.
ComplexMatrix prox_l1_entrywise(const ComplexMatrix& x, double threshold);

/// Soft-thresholds the eigenvalues of a Hermitian matrix.
HermitianMatrix prox_trace_norm(const HermitianMatrix& x, double threshold);

/// Linear measurement map A acting on Hermitian D x D matrices via Frobenius
/// pairings, A(X)_i = Re<S_i, X>. The solver consumes it together with the
/// implicit identity block on the corruption vector.
class SensingOperator {
 public:
  virtual ~SensingOperator() = default;
  virtual Index dim() const = 0;   ///< matrix side D
  virtual Index rows() const = 0;  ///< number of measurement rows m
  virtual RealVector apply(const ComplexMatrix& x) const = 0;
  virtual ComplexMatrix apply_adjoint(const RealVector& r) const = 0;  ///< sum_i r_i S_i
  virtual RealMatrix gram() const = 0;                                 ///< A A^T, m x m
  /// True when A A^T = factor * I, letting the solver skip the Cholesky factor.
  virtual bool gram_is_scaled_identity(double* factor) const {
    (void)factor;
    return false;
  }
};

/// Affine feasible set with closed-form Euclidean projection.
class AffineConstraint {
 public:
  virtual ~AffineConstraint() = default;
  virtual ComplexMatrix project(const ComplexMatrix& x) const = 0;
  /// Frobenius norm of the constraint violation.
  virtual double residual(const ComplexMatrix& x) const = 0;
  /// Trace shared by every feasible point.
  virtual double trace_target() const = 0;
};

/// {rho : Tr_S(rho) = I/d_anc}, tracing out the first (system) factor.
class PartialTraceConstraint : public AffineConstraint {
 public:
  PartialTraceConstraint(Index d_sys, Index d_anc);
  ComplexMatrix project(const ComplexMatrix& x) const override;
  double residual(const ComplexMatrix& x) const override;
  double trace_target() const override { return 1.0; }

 private:
  Index d_sys_;
  Index d_anc_;
};

/// Trace-preservation set {chi : sum_ab chi_ab Gamma_b^dag Gamma_a = I}.
/// The constraint operator is cached in sparse form; its (small) Gram matrix
/// is factorized once so each projection is two sparse products and a solve.
class TpConstraint : public AffineConstraint {
 public:
  explicit TpConstraint(const GammaBasis& basis);
  ComplexMatrix project(const ComplexMatrix& x) const override;
  double residual(const ComplexMatrix& x) const override;
  double trace_target() const override { return trace_target_; }

 private:
  ComplexVector constraint_values(const ComplexMatrix& x) const;

  Index d_;
  Index d2_;
  double trace_target_;
  Eigen::SparseMatrix<Complex> op_;  ///< d^2 x d^4, columns indexed a*d^2+b
  Eigen::LDLT<ComplexMatrix> gram_;
  ComplexVector target_;  ///< vec of the identity
};

/// Projects a row-major flattened process matrix onto the trace-preservation
/// set of `basis`. Convenience wrapper over TpConstraint.
ComplexVector project_affine_tp(const ComplexVector& chi_vec, const GammaBasis& basis);

enum class MatrixReg { None, TraceNorm, EntrywiseL1 };

/// Composite recovery program
///   min_(X, v) 1/2 ||y - A(X) - v||^2 + reg_matrix(X) + reg_vector * ||v||_1
///   s.t. X in PSD cone (optional), X in affine set (optional);
/// the extended map [A, I] couples the matrix block with the corruption block.
struct RecoveryProblem {
  std::shared_ptr<const SensingOperator> forward;
  RealVector data;
  MatrixReg reg_matrix = MatrixReg::None;
  double reg_matrix_weight = 0.0;
  double reg_vector_weight = 0.0;
  bool psd_cone = true;
  std::shared_ptr<const AffineConstraint> affine;
};

struct SolverOptions {
  long max_iters = 50000;
  double step_size = 0.0;  ///< ADMM penalty; 0 selects it from a power-iteration
                           ///< estimate of the forward map's norm, with
                           ///< residual balancing enabled
  double feas_tol = 1e-7;
  double obj_tol = 1e-9;
  double over_relaxation = 1.7;
};

struct RecoveryResult {
  HermitianMatrix matrix_estimate;
  RealVector corruption_estimate;
  long iterations = 0;
  double final_objective = 0.0;
  double feasibility_residual = 0.0;
  bool converged = false;
};

/// Divergence or non-convergence, carrying the last iterate as diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, RecoveryResult diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const RecoveryResult& diagnostics() const { return diagnostics_; }

 private:
  RecoveryResult diagnostics_;
};

/// Consensus ADMM: a joint quadratic step in (X, v), proximal steps on the
/// matrix regularizer and the corruption l1 term, and dual-ascent projections
/// onto the PSD cone and the affine set so both feasibility certificates are
/// driven below feas_tol together. Deterministic for identical inputs.
RecoveryResult solve(const RecoveryProblem& problem, const SolverOptions& opts);

}  // namespace cqpt

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

#include "cqpt/solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cqpt {

RealVector prox_l1(const RealVector& x, double threshold) {
  if (threshold < 0) throw ConfigError("prox_l1: threshold must be nonnegative");
  return x.array().sign() * (x.array().abs() - threshold).max(0.0);
}

ComplexMatrix prox_l1_entrywise(const ComplexMatrix& x, double threshold) {
  if (threshold < 0) throw ConfigError("prox_l1_entrywise: threshold must be nonnegative");
  ComplexMatrix out(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) {
      const double a = std::abs(x(i, j));
      out(i, j) = a <= threshold ? Complex(0, 0) : x(i, j) * ((a - threshold) / a);
    }
  return out;
}

HermitianMatrix prox_trace_norm(const HermitianMatrix& x, double threshold) {
  if (threshold < 0) throw ConfigError("prox_trace_norm: threshold must be nonnegative");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(x.mat());
  if (eig.info() != Eigen::Success) throw NumericalError("prox_trace_norm: eigensolver failed");
  RealVector lam = eig.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    const double a = std::abs(lam[i]);
    lam[i] = a <= threshold ? 0.0 : (lam[i] > 0 ? a - threshold : threshold - a);
  }
  return HermitianMatrix::Symmetrized(eig.eigenvectors() * lam.asDiagonal() *
                                      eig.eigenvectors().adjoint());
}

// ---------------------------------------------------------------------------
// Affine constraints

PartialTraceConstraint::PartialTraceConstraint(Index d_sys, Index d_anc)
    : d_sys_(d_sys), d_anc_(d_anc) {
  if (d_sys < 1 || d_anc < 1) throw ConfigError("PartialTraceConstraint: bad dimensions");
}

namespace {

ComplexMatrix trace_out_first(const ComplexMatrix& x, Index d_sys, Index d_anc) {
  ComplexMatrix out = ComplexMatrix::Zero(d_anc, d_anc);
  for (Index s = 0; s < d_sys; ++s) out += x.block(s * d_anc, s * d_anc, d_anc, d_anc);
  return out;
}

}  // namespace

ComplexMatrix PartialTraceConstraint::project(const ComplexMatrix& x) const {
  if (x.rows() != d_sys_ * d_anc_ || x.cols() != x.rows())
    throw DimensionError("PartialTraceConstraint: dimension mismatch");
  ComplexMatrix defect = trace_out_first(x, d_sys_, d_anc_);
  defect -= ComplexMatrix::Identity(d_anc_, d_anc_) / static_cast<double>(d_anc_);
  ComplexMatrix out = x;
  const double inv = 1.0 / static_cast<double>(d_sys_);
  for (Index s = 0; s < d_sys_; ++s)
    out.block(s * d_anc_, s * d_anc_, d_anc_, d_anc_) -= inv * defect;
  return out;
}

double PartialTraceConstraint::residual(const ComplexMatrix& x) const {
  ComplexMatrix defect = trace_out_first(x, d_sys_, d_anc_);
  defect -= ComplexMatrix::Identity(d_anc_, d_anc_) / static_cast<double>(d_anc_);
  return defect.norm();
}

TpConstraint::TpConstraint(const GammaBasis& basis) : d_(basis.d), d2_(basis.d * basis.d) {
  trace_target_ = static_cast<double>(d_) / basis.norm_const;
  const Index d4 = d2_ * d2_;
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(d4) * 2);
  for (Index a = 0; a < d2_; ++a) {
    for (Index b = 0; b < d2_; ++b) {
      const ComplexMatrix prod = basis.elements[static_cast<std::size_t>(b)].adjoint() *
                                 basis.elements[static_cast<std::size_t>(a)];
      const Index col = a * d2_ + b;
      for (Index i = 0; i < d_; ++i)
        for (Index j = 0; j < d_; ++j)
          if (std::abs(prod(i, j)) > 1e-14)
            trips.emplace_back(i * d_ + j, col, prod(i, j));
    }
  }
  op_.resize(d2_, d4);
  op_.setFromTriplets(trips.begin(), trips.end());
  op_.makeCompressed();
  const ComplexMatrix gram = ComplexMatrix(op_ * op_.adjoint());
  gram_.compute(gram);
  if (gram_.info() != Eigen::Success)
    throw NumericalError("TpConstraint: constraint operator is rank-deficient");
  target_ = vec_rowmajor(ComplexMatrix::Identity(d_, d_));
}

ComplexVector TpConstraint::constraint_values(const ComplexMatrix& x) const {
  if (x.rows() != d2_ || x.cols() != d2_)
    throw DimensionError("TpConstraint: dimension mismatch");
  return op_ * vec_rowmajor(x) - target_;
}

ComplexMatrix TpConstraint::project(const ComplexMatrix& x) const {
  const ComplexVector r = constraint_values(x);
  const ComplexVector correction = op_.adjoint() * gram_.solve(r);
  return x - unvec_rowmajor(correction, d2_, d2_);
}

double TpConstraint::residual(const ComplexMatrix& x) const {
  return constraint_values(x).norm();
}

ComplexVector project_affine_tp(const ComplexVector& chi_vec, const GammaBasis& basis) {
  const Index d2 = basis.d * basis.d;
  if (chi_vec.size() != d2 * d2)
    throw DimensionError("project_affine_tp: expected a d^4 vector");
  const TpConstraint constraint(basis);
  return vec_rowmajor(constraint.project(unvec_rowmajor(chi_vec, d2, d2)));
}

// ---------------------------------------------------------------------------
// Consensus ADMM

namespace {

struct MatrixBlock {
  ComplexMatrix z;
  ComplexMatrix u;
};

double sigma_max_sq(const RealMatrix& g) {
  const Index m = g.rows();
  RealVector v = RealVector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  double lam = 0;
  for (int it = 0; it < 100; ++it) {
    RealVector w = g * v;
    const double n = w.norm();
    if (n == 0) return 0;
    v = w / n;
    lam = n;
  }
  return lam;
}

}  // namespace

RecoveryResult solve(const RecoveryProblem& problem, const SolverOptions& opts) {
  if (!problem.forward) throw ConfigError("solve: missing forward map");
  if (opts.max_iters < 1) throw ConfigError("solve: max_iters must be >= 1");
  if (!(opts.feas_tol > 0) || !(opts.obj_tol > 0))
    throw ConfigError("solve: tolerances must be positive");
  if (!(opts.over_relaxation > 0) || opts.over_relaxation >= 2)
    throw ConfigError("solve: over_relaxation must lie in (0, 2)");

  const SensingOperator& fwd = *problem.forward;
  const Index dim = fwd.dim();
  const Index m = fwd.rows();
  if (problem.data.size() != m) throw DimensionError("solve: data length mismatch");

  const bool has_reg = problem.reg_matrix != MatrixReg::None;
  if (has_reg && !(problem.reg_matrix_weight > 0))
    throw ConfigError("solve: matrix regularizer weight must be positive");
  if (!(problem.reg_vector_weight > 0))
    throw ConfigError("solve: corruption weight must be positive");
  const bool has_psd = problem.psd_cone;
  const bool has_aff = problem.affine != nullptr;
  const int n_copies = (has_reg ? 1 : 0) + (has_psd ? 1 : 0) + (has_aff ? 1 : 0);
  if (n_copies == 0) throw ConfigError("solve: no matrix constraint or regularizer");

  // Quadratic-step machinery: (c A^T A + lambda I)^-1 via the m x m Gram matrix.
  double gram_factor = 0;
  const bool diagonal_gram = fwd.gram_is_scaled_identity(&gram_factor);
  RealMatrix gram;
  if (!diagonal_gram) gram = fwd.gram();
  const double norm_sq = diagonal_gram ? gram_factor : sigma_max_sq(gram);

  double rho = opts.step_size > 0
                   ? opts.step_size
                   : std::max(0.1, std::sqrt(norm_sq / static_cast<double>(m)));
  const bool adapt = opts.step_size <= 0;

  double lambda = 0, cfit = 0, diag_denom = 0;
  Eigen::LLT<RealMatrix> chol;
  const auto refresh = [&] {
    lambda = n_copies * rho;
    cfit = rho / (1.0 + rho);
    if (diagonal_gram) {
      diag_denom = lambda + cfit * gram_factor;
    } else {
      chol.compute(RealMatrix(cfit * gram + lambda * RealMatrix::Identity(m, m)));
      if (chol.info() != Eigen::Success) throw NumericalError("solve: Gram factorization failed");
    }
  };
  refresh();
  const auto gram_solve = [&](const RealVector& w) -> RealVector {
    return diagonal_gram ? RealVector(w / diag_denom) : RealVector(chol.solve(w));
  };

  const RealVector& y = problem.data;
  ComplexMatrix x = has_aff ? hermitize(problem.affine->project(ComplexMatrix::Zero(dim, dim)))
                            : ComplexMatrix::Zero(dim, dim);
  MatrixBlock reg{x, ComplexMatrix::Zero(dim, dim)};
  MatrixBlock psd{x, ComplexMatrix::Zero(dim, dim)};
  MatrixBlock aff{x, ComplexMatrix::Zero(dim, dim)};
  RealVector v = RealVector::Zero(m);
  RealVector w_sparse = RealVector::Zero(m);
  RealVector u_sparse = RealVector::Zero(m);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig;
  const double alpha = opts.over_relaxation;

  const auto objective_at = [&](const ComplexMatrix& xm, const RealVector& ax,
                                const RealVector& vv) {
    double val = 0.5 * (y - ax - vv).squaredNorm() + problem.reg_vector_weight * vv.lpNorm<1>();
    if (problem.reg_matrix == MatrixReg::EntrywiseL1)
      val += problem.reg_matrix_weight * xm.cwiseAbs().sum();
    else if (problem.reg_matrix == MatrixReg::TraceNorm) {
      eig.compute(xm, Eigen::EigenvaluesOnly);
      val += problem.reg_matrix_weight * eig.eigenvalues().cwiseAbs().sum();
    }
    return val;
  };
  const auto feasibility_at = [&](const ComplexMatrix& xm) {
    double f = 0;
    if (has_psd) {
      eig.compute(xm, Eigen::EigenvaluesOnly);
      f = std::max(f, std::max(0.0, -eig.eigenvalues().minCoeff()));
    }
    if (has_aff) {
      f = std::max(f, problem.affine->residual(xm));
      f = std::max(f, std::abs(xm.trace().real() - problem.affine->trace_target()));
    }
    return f;
  };

  double obj = std::numeric_limits<double>::infinity();
  double prev_obj = obj;
  double best_obj = obj;
  double last_check_obj = obj;
  long rise_run = 0;
  long iters = 0;
  bool converged = false;
  RealVector ax = RealVector::Zero(m);

  for (long k = 1; k <= opts.max_iters; ++k) {
    iters = k;

    // Joint quadratic step in (X, v) against all consensus copies.
    const RealVector q = y - w_sparse + u_sparse;
    ComplexMatrix s_sum = ComplexMatrix::Zero(dim, dim);
    if (has_reg) s_sum += reg.z - reg.u;
    if (has_psd) s_sum += psd.z - psd.u;
    if (has_aff) s_sum += aff.z - aff.u;
    const ComplexMatrix rhs = cfit * fwd.apply_adjoint(q) + rho * s_sum;
    const RealVector t = gram_solve(fwd.apply(rhs));
    x = hermitize((rhs - cfit * fwd.apply_adjoint(t)) / lambda);
    ax = fwd.apply(x);
    v = (y - ax + rho * (w_sparse - u_sparse)) / (1.0 + rho);

    double rp = 0, rd = 0;
    const auto update_block = [&](MatrixBlock& blk, auto&& prox) {
      const ComplexMatrix relaxed = alpha * x + (1.0 - alpha) * blk.z;
      const ComplexMatrix input = relaxed + blk.u;
      ComplexMatrix znew = prox(input);
      rd = std::max(rd, rho * (znew - blk.z).norm());
      blk.u = hermitize(input - znew);
      blk.z = std::move(znew);
      rp = std::max(rp, (x - blk.z).norm());
    };
    if (has_reg) {
      const double thr = problem.reg_matrix_weight / rho;
      if (problem.reg_matrix == MatrixReg::TraceNorm)
        update_block(reg, [&](const ComplexMatrix& in) {
          return prox_trace_norm(HermitianMatrix::Symmetrized(in), thr).mat();
        });
      else
        update_block(reg, [&](const ComplexMatrix& in) { return prox_l1_entrywise(in, thr); });
    }
    if (has_psd)
      update_block(psd, [&](const ComplexMatrix& in) {
        return project_psd(HermitianMatrix::Symmetrized(in)).mat();
      });
    if (has_aff)
      update_block(aff, [&](const ComplexMatrix& in) {
        return hermitize(problem.affine->project(in));
      });

    {
      const RealVector relaxed = alpha * v + (1.0 - alpha) * w_sparse;
      const RealVector input = relaxed + u_sparse;
      RealVector wnew = prox_l1(input, problem.reg_vector_weight / rho);
      rd = std::max(rd, rho * (wnew - w_sparse).norm());
      u_sparse = input - wnew;
      w_sparse = std::move(wnew);
      rp = std::max(rp, (v - w_sparse).norm());
    }

    obj = objective_at(x, ax, w_sparse);
    best_obj = std::min(best_obj, obj);
    // Divergence: a sustained strictly-increasing stretch that has carried the
    // objective well past the best value seen.
    if (obj > prev_obj * (1.0 + 1e-12) && k > 1) {
      if (++rise_run >= 100 && obj > 2.0 * best_obj + 1e-12) {
        RecoveryResult diag;
        diag.matrix_estimate = HermitianMatrix::Symmetrized(x);
        diag.corruption_estimate = w_sparse;
        diag.iterations = k;
        diag.final_objective = obj;
        diag.feasibility_residual = feasibility_at(x);
        diag.converged = false;
        throw ConvergenceError("solve: objective increased over 100 consecutive iterations",
                               std::move(diag));
      }
    } else {
      rise_run = 0;
    }
    prev_obj = obj;

    if (k % 10 == 0) {
      const double rel = std::abs(obj - last_check_obj) / std::max(1.0, std::abs(obj));
      last_check_obj = obj;
      if (k >= 50 && rel < opts.obj_tol && feasibility_at(x) <= opts.feas_tol) {
        converged = true;
        break;
      }
    }

    // Residual balancing while the penalty is still being tuned.
    if (adapt && k <= 2000 && k % 100 == 0) {
      double next = rho;
      if (rp > 10.0 * rd)
        next = std::min(rho * 2.0, 1e6);
      else if (rd > 10.0 * rp)
        next = std::max(rho * 0.5, 1e-4);
      if (next != rho) {
        const double ratio = rho / next;
        reg.u *= ratio;
        psd.u *= ratio;
        aff.u *= ratio;
        u_sparse *= ratio;
        rho = next;
        refresh();
      }
    }
  }

  RecoveryResult res;
  res.matrix_estimate = HermitianMatrix::Symmetrized(x);
  res.corruption_estimate = w_sparse;
  res.iterations = iters;
  res.final_objective = objective_at(x, ax, w_sparse);
  res.feasibility_residual = feasibility_at(x);
  res.converged = converged;
  return res;
}

}  // namespace cqpt

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cqpt/choi.hpp"
#include "cqpt/metrics.hpp"
#include "cqpt/rng.hpp"

using namespace cqpt;

namespace {

HermitianMatrix random_density(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  ComplexMatrix rho = g * g.adjoint();
  return HermitianMatrix::Symmetrized(rho / rho.trace().real());
}

}  // namespace

TEST_CASE("choi_of_unitary: identity gate gives the maximally entangled state") {
  const ChoiState state = choi_of_unitary(make_gate(GateId::Identity));
  const ComplexMatrix& rho = state.matrix.mat();
  REQUIRE(rho.rows() == 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      CHECK(std::abs(rho(i, j) - (corner ? Complex(0.5, 0) : Complex(0, 0))) < 1e-14);
    }
}

TEST_CASE("choi_of_unitary: ancilla reduction is I/d for every catalog gate") {
  for (GateId id : {GateId::Cnot, GateId::Cz, GateId::Swap, GateId::Toffoli}) {
    const UnitaryGate gate = make_gate(id);
    const ChoiState state = choi_of_unitary(gate);
    CHECK(std::abs(state.matrix.trace() - 1.0) < 1e-12);
    const HermitianMatrix reduced =
        partial_trace_system(state.matrix, gate.dim(), gate.dim());
    const double d = static_cast<double>(gate.dim());
    CHECK((reduced.mat() - ComplexMatrix::Identity(gate.dim(), gate.dim()) / d)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("choi_of_unitary: CNOT gives rank one and the top eigenvector reshapes to the gate") {
  const UnitaryGate cnot = make_gate(GateId::Cnot);
  const ChoiState state = choi_of_unitary(cnot);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(state.matrix.mat());
  const RealVector lam = eig.eigenvalues();
  CHECK(lam[lam.size() - 1] == doctest::Approx(1.0).epsilon(1e-10));
  for (Index i = 0; i + 1 < lam.size(); ++i) CHECK(std::abs(lam[i]) < 1e-10);

  // Reshape oracle: psi[i*d+j] should be proportional to U(i, j).
  const ComplexVector psi = eig.eigenvectors().col(lam.size() - 1);
  const Index d = cnot.dim();
  ComplexMatrix reshaped(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) reshaped(i, j) = psi[i * d + j];
  Complex phase = 0;
  for (Index i = 0; i < d && std::abs(phase) < 1e-12; ++i)
    for (Index j = 0; j < d; ++j)
      if (std::abs(reshaped(i, j)) > 1e-6) {
        phase = cnot.matrix(i, j) / (reshaped(i, j) * std::sqrt(static_cast<double>(d)));
        break;
      }
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);
  CHECK((reshaped * std::sqrt(static_cast<double>(d)) * phase - cnot.matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("sample_pauli_settings: exhaustive, deterministic, seed-sensitive") {
  const PauliObservableSet all = sample_pauli_settings(2, 256, 17);
  std::set<std::uint64_t> seen;
  for (const PauliLabel& label : all.labels) {
    CHECK(label.size() == 4);
    seen.insert(label.index());
  }
  CHECK(seen.size() == 256);

  const PauliObservableSet a = sample_pauli_settings(2, 64, 5);
  const PauliObservableSet b = sample_pauli_settings(2, 64, 5);
  for (Index i = 0; i < 64; ++i)
    CHECK(a.labels[static_cast<std::size_t>(i)] == b.labels[static_cast<std::size_t>(i)]);

  // Collision oracle: two independent 64-of-256 subsets coincide with
  // probability 1/C(256,64) ~ 1e-61, so distinct seeds must differ.
  const PauliObservableSet c = sample_pauli_settings(2, 64, 6);
  std::set<std::uint64_t> sa, sc;
  for (const auto& l : a.labels) sa.insert(l.index());
  for (const auto& l : c.labels) sc.insert(l.index());
  CHECK(sa != sc);

  CHECK_THROWS_AS(sample_pauli_settings(2, 257, 0), ConfigError);
}

TEST_CASE("sensing_map_choi: known components") {
  const UnitaryGate cnot = make_gate(GateId::Cnot);
  const ChoiState state = choi_of_unitary(cnot);

  // Any non-identity word on the maximally mixed state gives zero.
  const ChoiState mixed(2, HermitianMatrix::Symmetrized(ComplexMatrix::Identity(16, 16) / 16.0));
  const PauliObservableSet probe(2, {PauliLabel("ZXYI"), PauliLabel("IIII"), PauliLabel("ZIZI")});
  const RealVector at_mixed = sensing_map_choi(mixed, probe, false);
  CHECK(at_mixed[0] == doctest::Approx(0.0));
  CHECK(at_mixed[1] == doctest::Approx(1.0));  // identity word measures the trace
  CHECK(at_mixed[2] == doctest::Approx(0.0));

  // Brute-force trace oracle for the CNOT state at W = (Z x I) x (Z x I).
  const ComplexMatrix w = pauli_operator(PauliLabel("ZIZI")).mat();
  const double expected = (w * state.matrix.mat()).trace().real();
  const RealVector got = sensing_map_choi(state, probe, false);
  CHECK(got[2] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sensing_map_choi: linearity on Hermitian inputs") {
  Rng rng(23);
  const PauliObservableSet settings = sample_pauli_settings(1, 10, 3);
  const std::vector<PauliTerm> terms = settings.terms();
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a(4, 4), b(4, 4);
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i < 4; ++i) {
        a(i, j) = Complex(rng.normal(), rng.normal());
        b(i, j) = Complex(rng.normal(), rng.normal());
      }
    a = hermitize(a);
    b = hermitize(b);
    const double ca = rng.normal(), cb = rng.normal();
    const RealVector lhs = pauli_map_apply(terms, ca * a + cb * b, 1.0);
    const RealVector rhs =
        ca * pauli_map_apply(terms, a, 1.0) + cb * pauli_map_apply(terms, b, 1.0);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("full word set is an isometry under the scaled map") {
  Rng rng(29);
  const PauliObservableSet all = sample_pauli_settings(1, 16, 11);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianMatrix rho = random_density(4, rng);
    const ChoiState state(1, rho);
    const RealVector u = sensing_map_choi(state, all, true);
    CHECK(u.squaredNorm() == doctest::Approx(rho.mat().squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("simulate_choi_measurements: noiseless limit and corruption offset") {
  const ChoiState state = choi_of_unitary(make_gate(GateId::Cnot));
  const PauliObservableSet settings = sample_pauli_settings(2, 32, 7);
  const RealVector zero = RealVector::Zero(32);
  const RealVector exact = simulate_choi_measurements(state, settings, std::nullopt, zero, 1);
  CHECK((exact - sensing_map_choi(state, settings, false)).cwiseAbs().maxCoeff() == 0.0);

  RealVector v = RealVector::Zero(32);
  v[3] = 0.7;
  v[19] = -1.2;
  const RealVector shifted = simulate_choi_measurements(state, settings, std::nullopt, v, 1);
  CHECK((shifted - exact - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("simulate_choi_measurements: finite shots concentrate (binomial oracle)") {
  // A zero-mean component: a flip-type word on the maximally mixed state.
  const ChoiState mixed(1, HermitianMatrix::Symmetrized(ComplexMatrix::Identity(4, 4) / 4.0));
  const PauliObservableSet probe(1, {PauliLabel("XZ")});
  const RealVector zero = RealVector::Zero(1);
  const double bound = 5.0 / std::sqrt(1000.0);
  int within = 0;
  const int n_seeds = 400;
  for (int seed = 0; seed < n_seeds; ++seed) {
    const RealVector y = simulate_choi_measurements(mixed, probe, 1000, zero, seed);
    if (std::abs(y[0]) <= bound) ++within;
  }
  // 5 sigma of a +-1 sample mean: essentially every seed lands inside.
  CHECK(within >= static_cast<int>(0.99 * n_seeds));
}

TEST_CASE("recover_choi: complete noiseless data recovers the gate state") {
  const UnitaryGate gate = make_gate(GateId::Identity);
  const ChoiState truth = choi_of_unitary(gate);
  const PauliObservableSet all = sample_pauli_settings(1, 16, 13);
  const RealVector y = sensing_map_choi(truth, all, false);
  SolverOptions opts;
  const RecoveryResult res = recover_choi(y, all, 0.01 * 16, 1e-2, opts);
  CHECK(res.converged);
  CHECK(fidelity_normalized(project_psd(res.matrix_estimate), truth.matrix) >= 0.999);
  CHECK(std::abs(res.matrix_estimate.trace() - 1.0) <= opts.feas_tol);
  CHECK(min_eigenvalue(res.matrix_estimate.mat()) >= -opts.feas_tol);
}

TEST_CASE("recover_choi: dense huge corruption degrades recovery (documented failure mode)") {
  const UnitaryGate gate = make_gate(GateId::Identity);
  const ChoiState truth = choi_of_unitary(gate);
  const PauliObservableSet settings = sample_pauli_settings(1, 12, 3);
  Rng rng(5);
  RealVector v(12);
  for (Index i = 0; i < 12; ++i) v[i] = 1e3 * (rng.bernoulli(0.5) ? 1.0 : -1.0);
  const RealVector y = sensing_map_choi(truth, settings, false) + v;
  SolverOptions opts;
  RecoveryResult res;
  try {
    res = recover_choi(y, settings, 0.01 * 12, 1e-2, opts);
  } catch (const ConvergenceError& e) {
    res = e.diagnostics();
  }
  CHECK(fidelity_normalized(project_psd(res.matrix_estimate), truth.matrix) < 0.9);
}

TEST_CASE("recover_choi: determinism") {
  const ChoiState truth = choi_of_unitary(make_gate(GateId::Identity));
  const PauliObservableSet settings = sample_pauli_settings(1, 12, 19);
  RealVector v = RealVector::Zero(12);
  v[2] = 0.8;
  const RealVector y = simulate_choi_measurements(truth, settings, 500, v, 77);
  SolverOptions opts;
  const RecoveryResult a = recover_choi(y, settings, 0.12, 1e-2, opts);
  const RecoveryResult b = recover_choi(y, settings, 0.12, 1e-2, opts);
  CHECK((a.matrix_estimate.mat() - b.matrix_estimate.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.corruption_estimate - b.corruption_estimate).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(ChoiState(1, HermitianMatrix(ComplexMatrix::Identity(4, 4))), NumericalError);
  CHECK_THROWS_AS(PauliObservableSet(1, {PauliLabel("XX"), PauliLabel("XX")}), ConfigError);
  CHECK_THROWS_AS(PauliObservableSet(2, {PauliLabel("XX")}), ConfigError);
  const PauliObservableSet settings = sample_pauli_settings(1, 4, 0);
  SolverOptions opts;
  CHECK_THROWS_AS(recover_choi(RealVector::Zero(4), settings, 0.0, 1e-2, opts), ConfigError);
  CHECK_THROWS_AS(recover_choi(RealVector::Zero(3), settings, 0.1, 1e-2, opts), DimensionError);
}

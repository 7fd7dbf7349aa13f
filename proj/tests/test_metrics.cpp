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

#include <cmath>

#include "cqpt/metrics.hpp"
#include "cqpt/pauli.hpp"
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

HermitianMatrix pure(const ComplexVector& k) {
  return HermitianMatrix::Symmetrized(k * k.adjoint() / k.squaredNorm());
}

}  // namespace

TEST_CASE("fidelity: identical, orthogonal, and mixed-overlap cases") {
  Rng rng(1);
  const HermitianMatrix rho = random_density(4, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));

  ComplexVector a = ComplexVector::Zero(3), b = ComplexVector::Zero(3);
  a[0] = 1;
  b[1] = 1;
  CHECK(fidelity(pure(a), pure(b)) == doctest::Approx(0.0));

  // Pure vs maximally mixed: overlap Tr(rho sigma) = 1/2.
  ComplexVector zero2 = ComplexVector::Zero(2);
  zero2[0] = 1;
  const HermitianMatrix mixed =
      HermitianMatrix::Symmetrized(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(fidelity(pure(zero2), mixed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity: symmetry and range on random pairs") {
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const HermitianMatrix a = random_density(5, rng);
    const HermitianMatrix b = random_density(5, rng);
    const double fab = fidelity(a, b);
    const double fba = fidelity(b, a);
    CHECK(std::abs(fab - fba) < 1e-9);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0);
  }
}

TEST_CASE("fidelity: validation") {
  ComplexMatrix neg(2, 2);
  neg << -0.5, 0, 0, 1.5;
  const HermitianMatrix bad(neg);
  const HermitianMatrix mixed =
      HermitianMatrix::Symmetrized(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK_THROWS_AS(fidelity(bad, mixed), NumericalError);

  const HermitianMatrix twice =
      HermitianMatrix::Symmetrized(ComplexMatrix::Identity(2, 2));
  CHECK_THROWS_AS(fidelity(twice, mixed), NumericalError);  // trace mismatch
  CHECK(fidelity_normalized(twice, mixed) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mse: defining cases") {
  RealVector a(2), b(2);
  a << 1, 0;
  b << 0, 0;
  CHECK(mse(a, a) == 0.0);
  CHECK(mse(a, b) == doctest::Approx(0.5));
  RealVector v(4);
  v << 1, -2, 3, -4;
  CHECK(mse(v, RealVector::Zero(4)) == doctest::Approx(v.squaredNorm() / 4.0));
  CHECK_THROWS_AS(mse(a, RealVector::Zero(3)), DimensionError);
}

TEST_CASE("empirical_grip: full sampling gives zero matrix defect") {
  const GripMap map = make_pauli_grip_map(2, 16, 3);  // full single-system set
  const GripEstimate est = empirical_grip(map, 1, 0, 50, 7);
  CHECK(est.delta1 < 1e-10);
  CHECK(est.delta2 == 0.0);
  CHECK(est.delta_total < 1e-10);

  const GripMap map4 = make_pauli_grip_map(4, 256, 5);  // full two-system set
  const GripEstimate est4 = empirical_grip(map4, 2, 0, 20, 9);
  CHECK(est4.delta1 < 1e-10);
}

TEST_CASE("empirical_grip: zero-corruption trials give zero cross term") {
  const GripMap map = make_pauli_grip_map(2, 8, 11);
  const GripEstimate est = empirical_grip(map, 2, 0, 40, 13);
  CHECK(est.delta2 == 0.0);
  CHECK(est.delta_total <= est.delta1 + est.delta2 + 1e-12);
}

TEST_CASE("empirical_grip: per-draw cross defect respects the sparsity bound for rank one") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const GripMap map = make_pauli_grip_map(4, 100, seed);
    const GripEstimate est = empirical_grip(map, 1, 8, 300, seed + 100);
    CHECK(est.delta2_bound_ratio <= 1.0 + 1e-12);
    CHECK(est.delta_total <= est.delta1 + est.delta2 + 1e-12);
    CHECK(est.delta1 >= 0.0);
    CHECK(est.delta2 >= 0.0);
  }
}

TEST_CASE("empirical_grip: estimates are running maxima in the trial count") {
  const GripMap map = make_pauli_grip_map(4, 64, 21);
  double prev1 = 0, prev2 = 0, prevt = 0;
  for (int trials : {10, 30, 60, 120}) {
    const GripEstimate est = empirical_grip(map, 2, 5, trials, 77);
    CHECK(est.delta1 >= prev1);
    CHECK(est.delta2 >= prev2);
    CHECK(est.delta_total >= prevt);
    prev1 = est.delta1;
    prev2 = est.delta2;
    prevt = est.delta_total;
  }
}

TEST_CASE("empirical_grip: median matrix defect decreases with the sampling rate") {
  // dim = 16 (two-system probe), m in {dim, 4 dim, dim^2}, rank-1 draws.
  const int n_maps = 11;
  for (int step = 0; step < 2; ++step) {
    const Index m_small = step == 0 ? 16 : 64;
    const Index m_large = step == 0 ? 64 : 256;
    std::vector<double> d_small, d_large;
    for (int i = 0; i < n_maps; ++i) {
      d_small.push_back(
          empirical_grip(make_pauli_grip_map(4, m_small, 1000 + i), 1, 0, 200, 2000 + i).delta1);
      d_large.push_back(
          empirical_grip(make_pauli_grip_map(4, m_large, 1000 + i), 1, 0, 200, 2000 + i).delta1);
    }
    std::sort(d_small.begin(), d_small.end());
    std::sort(d_large.begin(), d_large.end());
    CHECK(d_large[n_maps / 2] < d_small[n_maps / 2]);
  }
}

TEST_CASE("empirical_grip: validation") {
  const GripMap map = make_pauli_grip_map(2, 8, 1);
  CHECK_THROWS_AS(empirical_grip(map, 1, 0, 0, 0), ConfigError);
  CHECK_THROWS_AS(empirical_grip(map, 0, 0, 10, 0), ConfigError);
  CHECK_THROWS_AS(empirical_grip(map, 1, 9, 10, 0), ConfigError);
}

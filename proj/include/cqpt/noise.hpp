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

#include <cstdint>
#include <optional>

#include "cqpt/linalg.hpp"

namespace cqpt {

/// Finite shot count, or nullopt for exact expectation values.
using ShotCount = std::optional<long>;

/// Sparse Gaussian corruption: floor(eta * m) entries are nonzero.
struct CorruptionSpec {
  double eta = 0.1;
  double sigma = 1.0;
  double mean = 0.0;
};

/// Exactly floor(eta * m) nonzeros on a uniformly chosen support, values
/// i.i.d. Normal(mean, sigma^2). Deterministic per seed.
RealVector sparse_gaussian(Index m, const CorruptionSpec& spec, std::uint64_t seed);

enum class ShotModel {
  ProjectorProbability,  ///< entries in [0,1], estimated by Binomial(shots, p)/shots
  PauliExpectation       ///< entries in [-1,1], estimated by the mean of +-1 draws
};

/// Empirical estimate of each entry from `shots` repetitions; the infinite-shot
/// sentinel returns the input unchanged.
RealVector shot_estimate(const RealVector& p_true, ShotCount shots, ShotModel model,
                         std::uint64_t seed);

}  // namespace cqpt

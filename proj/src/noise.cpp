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

#include "cqpt/noise.hpp"

#include <cmath>

#include "cqpt/rng.hpp"

namespace cqpt {

RealVector sparse_gaussian(Index m, const CorruptionSpec& spec, std::uint64_t seed) {
  if (m < 1) throw ConfigError("sparse_gaussian: m must be >= 1");
  if (spec.eta < 0 || spec.eta > 1)
    throw ConfigError("sparse_gaussian: eta must lie in [0, 1]");
  if (!(spec.sigma > 0)) throw ConfigError("sparse_gaussian: sigma must be positive");
  const auto s = static_cast<std::size_t>(std::floor(spec.eta * static_cast<double>(m)));
  RealVector v = RealVector::Zero(m);
  if (s == 0) return v;
  Rng rng(seed);
  const auto support = rng.sample_without_replacement(static_cast<std::size_t>(m), s);
  for (std::size_t idx : support)
    v[static_cast<Index>(idx)] = rng.normal(spec.mean, spec.sigma);
  return v;
}

RealVector shot_estimate(const RealVector& p_true, ShotCount shots, ShotModel model,
                         std::uint64_t seed) {
  const double tol = 1e-9;
  const double lo = model == ShotModel::ProjectorProbability ? 0.0 : -1.0;
  for (Index i = 0; i < p_true.size(); ++i)
    if (p_true[i] < lo - tol || p_true[i] > 1.0 + tol)
      throw NumericalError("shot_estimate: entry outside the physical range");
  if (!shots.has_value()) return p_true;
  if (*shots < 1) throw ConfigError("shot_estimate: shots must be >= 1");

  Rng rng(seed);
  const auto n = *shots;
  RealVector out(p_true.size());
  for (Index i = 0; i < p_true.size(); ++i) {
    const double clamped = std::min(1.0, std::max(lo, p_true[i]));
    // A Pauli expectation p is the mean of +-1 outcomes with success
    // probability (1+p)/2, so both models reduce to one binomial draw.
    const double psucc = model == ShotModel::ProjectorProbability ? clamped : 0.5 * (1 + clamped);
    const double frac = static_cast<double>(rng.binomial(n, psucc)) / static_cast<double>(n);
    out[i] = model == ShotModel::ProjectorProbability ? frac : 2.0 * frac - 1.0;
  }
  return out;
}

}  // namespace cqpt

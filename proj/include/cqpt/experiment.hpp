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
#include <iosfwd>
#include <string>
#include <vector>

#include "cqpt/choi.hpp"
#include "cqpt/gamma.hpp"
#include "cqpt/gates.hpp"
#include "cqpt/noise.hpp"
#include "cqpt/solver.hpp"

namespace cqpt {

enum class Scheme { ChoiPauli, ProcessMatrix };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

/// Regularization weight on the matrix block: either a literal or a multiple
/// of the row count ("0.01*m").
struct Tau1Rule {
  double coefficient = 0.01;
  bool proportional = true;

  double value(Index m) const {
    return proportional ? coefficient * static_cast<double>(m) : coefficient;
  }
  static Tau1Rule literal(double v) { return {v, false}; }
  static Tau1Rule per_row(double c) { return {c, true}; }
  static Tau1Rule parse(const std::string& text);
  std::string str() const;
};

struct ExperimentConfig {
  Scheme scheme = Scheme::ProcessMatrix;
  GateId gate = GateId::Cnot;
  BasisKind basis_kind = BasisKind::Pauli;  ///< process-matrix scheme only
  std::vector<Index> m_values;
  int runs = 1;
  double eta = 0.1;
  double sigma = 1.0;
  ShotCount shots = 1000;
  Tau1Rule tau1_rule;       ///< channel-state scheme
  double tau2 = 1e-2;       ///< channel-state scheme
  double mu1 = 1e-5;        ///< process-matrix scheme
  double mu2 = 1e-3;        ///< process-matrix scheme
  std::uint64_t seed = 0;
  std::string output_path;
  bool use_trace_norm = true;  ///< keep the trace-norm term (constant on the feasible set)
  SolverOptions solver;
};

/// Parses and validates a JSON config; unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct SweepRecord {
  Index m = 0;
  int run_index = 0;
  double fidelity = 0;
  double mse = 0;
  long iterations = 0;
  double wall_time_s = 0;
  std::uint64_t seed_used = 0;
};

/// One tomography run per (m, run_index): sample settings, draw corruption and
/// shot noise, solve, score. Reproducible from config.seed alone; rows where
/// the solver hit max_iters are scored from its last iterate rather than
/// aborting the sweep. Output is sorted by (m, run_index).
std::vector<SweepRecord> run_experiment(const ExperimentConfig& config,
                                        std::ostream* progress = nullptr);

struct SummaryStats {
  double mean = 0, std = 0, se = 0, min = 0, max = 0;
};

struct SummaryRow {
  Index m = 0;
  SummaryStats fid;
  SummaryStats mse;
  int n = 0;
};

std::vector<SummaryRow> aggregate(const std::vector<SweepRecord>& records);

// CSV interfaces. Headers are fixed; floats carry 12 significant digits.
std::string records_to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_csv(const std::string& text);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace cqpt

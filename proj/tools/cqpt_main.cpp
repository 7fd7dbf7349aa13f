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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "cqpt/experiment.hpp"
#include "cqpt/metrics.hpp"
#include "cqpt/process.hpp"
#include "cqpt/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

int cmd_run(const std::string& config_path, bool quiet) {
  const cqpt::ExperimentConfig config = cqpt::load_experiment_config(config_path);
  const auto records = cqpt::run_experiment(config, quiet ? nullptr : &std::cerr);
  cqpt::write_text_file(config.output_path, cqpt::records_to_csv(records));
  if (!quiet) std::cerr << "wrote " << records.size() << " records to " << config.output_path << "\n";
  return kExitOk;
}

int cmd_summarize(const std::string& records_path, const std::string& out_path) {
  const auto records = cqpt::records_from_csv(cqpt::read_text_file(records_path));
  const std::string csv = cqpt::summary_to_csv(cqpt::aggregate(records));
  if (out_path.empty())
    std::cout << csv;
  else
    cqpt::write_text_file(out_path, csv);
  return kExitOk;
}

int cmd_grip(const std::string& scheme, int qubits, cqpt::Index m, int r, int s, int trials,
             std::uint64_t seed) {
  int letters = 0;
  if (scheme == "choi")
    letters = 2 * qubits;
  else if (scheme == "state")
    letters = qubits;
  else
    throw cqpt::ConfigError("grip: scheme must be 'choi' or 'state'");
  const cqpt::GripMap map = cqpt::make_pauli_grip_map(letters, m, cqpt::derive_seed(seed, 0xa));
  const cqpt::GripEstimate est = cqpt::empirical_grip(map, r, s, trials, cqpt::derive_seed(seed, 0xb));
  std::cout << "scheme,qubits,m,r,s,trials,delta1,delta2,delta_total,delta2_bound_ratio\n"
            << scheme << "," << qubits << "," << m << "," << r << "," << s << "," << trials << ","
            << fmt(est.delta1) << "," << fmt(est.delta2) << "," << fmt(est.delta_total) << ","
            << fmt(est.delta2_bound_ratio) << "\n";
  return kExitOk;
}

void dump_process_matrix(const cqpt::UnitaryGate& gate, const cqpt::GammaBasis& basis) {
  const cqpt::ProcessMatrix chi = cqpt::process_matrix_of_unitary(gate, basis);
  const auto& labels = basis.labels;
  for (cqpt::Index a = 0; a < chi.chi.dim(); ++a)
    for (cqpt::Index b = 0; b < chi.chi.dim(); ++b) {
      const cqpt::Complex v = chi.chi.mat()(a, b);
      if (std::abs(v) < 1e-14) continue;
      std::cout << cqpt::gate_name(gate.id) << "," << cqpt::basis_kind_name(basis.kind) << ","
                << labels[static_cast<std::size_t>(a)] << ","
                << labels[static_cast<std::size_t>(b)] << "," << fmt(v.real()) << ","
                << fmt(v.imag()) << "\n";
    }
}

int cmd_fixtures() {
  std::cout << "gate,basis,row,col,re,im\n";
  for (cqpt::GateId id : {cqpt::GateId::Cnot, cqpt::GateId::Cz, cqpt::GateId::Swap,
                          cqpt::GateId::Toffoli, cqpt::GateId::Fredkin, cqpt::GateId::Cccz}) {
    const cqpt::UnitaryGate gate = cqpt::make_gate(id);
    dump_process_matrix(gate, cqpt::gamma_basis(cqpt::BasisKind::Pauli, gate.dim()));
  }
  const cqpt::UnitaryGate cnot = cqpt::make_gate(cqpt::GateId::Cnot);
  dump_process_matrix(cnot, cqpt::gamma_basis(cqpt::BasisKind::Computational, cnot.dim()));
  dump_process_matrix(cnot, cqpt::gamma_basis(cqpt::BasisKind::Svd, cnot.dim(), &cnot));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and joint recovery of quantum processes under sparse measurement corruption"};
  app.require_subcommand(1);

  std::string config_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a sweep described by a JSON config");
  run->add_option("config", config_path, "Path to the JSON config")->required();
  run->add_flag("-q,--quiet", quiet, "Suppress progress output");

  std::string records_path, summary_out;
  auto* summarize = app.add_subcommand("summarize", "Aggregate a records CSV into per-m statistics");
  summarize->add_option("records", records_path, "Path to a records CSV")->required();
  summarize->add_option("-o,--output", summary_out, "Summary CSV path (default: stdout)");

  std::string grip_scheme;
  int grip_qubits = 2, grip_r = 1, grip_s = 0, grip_trials = 200;
  cqpt::Index grip_m = 16;
  std::uint64_t grip_seed = 0;
  auto* grip = app.add_subcommand("grip", "Monte Carlo isometry-defect estimate for a Pauli map");
  grip->add_option("scheme", grip_scheme, "'choi' (system+ancilla wires) or 'state'")->required();
  grip->add_option("--qubits", grip_qubits, "System qubit count")->capture_default_str();
  grip->add_option("--m", grip_m, "Sampled observables")->required();
  grip->add_option("--r", grip_r, "Matrix rank bound")->capture_default_str();
  grip->add_option("--s", grip_s, "Corruption sparsity")->capture_default_str();
  grip->add_option("--trials", grip_trials, "Monte Carlo draws")->capture_default_str();
  grip->add_option("--seed", grip_seed, "Seed")->capture_default_str();

  auto* fixtures = app.add_subcommand(
      "fixtures", "Dump the gate catalog's process matrices as CSV for external verification");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, quiet);
    if (summarize->parsed()) return cmd_summarize(records_path, summary_out);
    if (grip->parsed())
      return cmd_grip(grip_scheme, grip_qubits, grip_m, grip_r, grip_s, grip_trials, grip_seed);
    if (fixtures->parsed()) return cmd_fixtures();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const cqpt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cqpt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

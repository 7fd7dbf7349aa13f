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

#include "cqpt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cqpt/metrics.hpp"
#include "cqpt/process.hpp"
#include "cqpt/rng.hpp"

namespace cqpt {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items())
    if (known.find(item.key()) == known.end())
      throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
}

SolverOptions parse_solver_options(const json& obj) {
  reject_unknown_keys(obj, {"max_iters", "step_size", "feas_tol", "obj_tol", "over_relaxation"},
                      "solver");
  SolverOptions opts;
  if (obj.contains("max_iters")) opts.max_iters = obj.at("max_iters").get<long>();
  if (obj.contains("step_size")) opts.step_size = obj.at("step_size").get<double>();
  if (obj.contains("feas_tol")) opts.feas_tol = obj.at("feas_tol").get<double>();
  if (obj.contains("obj_tol")) opts.obj_tol = obj.at("obj_tol").get<double>();
  if (obj.contains("over_relaxation"))
    opts.over_relaxation = obj.at("over_relaxation").get<double>();
  if (opts.max_iters < 1) throw ConfigError("config: solver.max_iters must be >= 1");
  if (!(opts.feas_tol > 0) || !(opts.obj_tol > 0))
    throw ConfigError("config: solver tolerances must be positive");
  return opts;
}

Index scheme_max_m(const ExperimentConfig& config, int n_qubits) {
  if (config.scheme == Scheme::ChoiPauli) {
    Index total = 1;
    for (int i = 0; i < n_qubits; ++i) total *= 16;
    return total;
  }
  const Index side = Index{1} << (2 * n_qubits);
  return side * side;  // 16x16 = 256 pairs for n=2, (4^n)^2 otherwise
}

void validate(const ExperimentConfig& config) {
  const UnitaryGate gate = make_gate(config.gate);
  if (config.scheme == Scheme::ProcessMatrix &&
      (gate.n_qubits < 2 || gate.n_qubits > 4))
    throw ConfigError("config: process-matrix scheme supports 2-4 qubit gates");
  if (config.m_values.empty()) throw ConfigError("config: m_values must be nonempty");
  std::set<Index> distinct;
  const Index max_m = scheme_max_m(config, gate.n_qubits);
  for (Index m : config.m_values) {
    if (m < 1 || m > max_m)
      throw ConfigError("config: m value out of range for the scheme (max " +
                        std::to_string(max_m) + ")");
    if (!distinct.insert(m).second) throw ConfigError("config: duplicate m value");
  }
  if (config.runs < 1) throw ConfigError("config: runs must be >= 1");
  if (config.eta < 0 || config.eta > 1) throw ConfigError("config: eta must lie in [0, 1]");
  if (!(config.sigma > 0)) throw ConfigError("config: sigma must be positive");
  if (config.shots.has_value() && *config.shots < 1)
    throw ConfigError("config: shots must be >= 1 or \"inf\"");
  if (!(config.tau1_rule.coefficient > 0) || !(config.tau2 > 0) || !(config.mu1 > 0) ||
      !(config.mu2 > 0))
    throw ConfigError("config: regularization weights must be positive");
  if (config.output_path.empty()) throw ConfigError("config: output_path must be set");
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::ChoiPauli ? "choi_pauli" : "process_matrix";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "choi_pauli") return Scheme::ChoiPauli;
  if (name == "process_matrix") return Scheme::ProcessMatrix;
  throw ConfigError("unknown scheme: " + name);
}

Tau1Rule Tau1Rule::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const bool proportional = s.size() > 2 && s.substr(s.size() - 2) == "*m";
  if (proportional) s = s.substr(0, s.size() - 2);
  try {
    std::size_t used = 0;
    const double c = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return proportional ? per_row(c) : literal(c);
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse tau1 rule '" + text + "'");
  }
}

std::string Tau1Rule::str() const {
  return proportional ? fmt_double(coefficient) + "*m" : fmt_double(coefficient);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(obj,
                      {"scheme", "gate", "basis_kind", "m_values", "runs", "eta", "sigma",
                       "shots", "tau1_rule", "tau2", "mu1", "mu2", "seed", "output_path",
                       "use_trace_norm", "solver"},
                      "top level");

  ExperimentConfig config;
  try {
    config.scheme = scheme_from_name(obj.at("scheme").get<std::string>());
    config.gate = gate_from_name(obj.at("gate").get<std::string>());
    if (obj.contains("basis_kind"))
      config.basis_kind = basis_kind_from_name(obj.at("basis_kind").get<std::string>());
    for (const auto& v : obj.at("m_values")) config.m_values.push_back(v.get<Index>());
    config.runs = obj.at("runs").get<int>();
    config.eta = obj.at("eta").get<double>();
    if (obj.contains("sigma")) config.sigma = obj.at("sigma").get<double>();
    if (obj.contains("shots")) {
      const auto& s = obj.at("shots");
      if (s.is_string()) {
        if (s.get<std::string>() != "inf")
          throw ConfigError("config: shots must be a count or \"inf\"");
        config.shots = std::nullopt;
      } else {
        config.shots = s.get<long>();
      }
    }
    if (obj.contains("tau1_rule")) {
      const auto& t = obj.at("tau1_rule");
      config.tau1_rule =
          t.is_string() ? Tau1Rule::parse(t.get<std::string>()) : Tau1Rule::literal(t.get<double>());
    }
    if (obj.contains("tau2")) config.tau2 = obj.at("tau2").get<double>();
    if (obj.contains("mu1")) config.mu1 = obj.at("mu1").get<double>();
    if (obj.contains("mu2")) config.mu2 = obj.at("mu2").get<double>();
    config.seed = obj.at("seed").get<std::uint64_t>();
    config.output_path = obj.at("output_path").get<std::string>();
    if (obj.contains("use_trace_norm")) config.use_trace_norm = obj.at("use_trace_norm").get<bool>();
    if (obj.contains("solver")) config.solver = parse_solver_options(obj.at("solver"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path));
}

namespace {

struct RunOutcome {
  double fidelity = 0;
  double mse = 0;
  long iterations = 0;
};

RecoveryResult solve_or_diagnostics(const std::function<RecoveryResult()>& attempt) {
  try {
    return attempt();
  } catch (const ConvergenceError& e) {
    return e.diagnostics();
  }
}

}  // namespace

std::vector<SweepRecord> run_experiment(const ExperimentConfig& config, std::ostream* progress) {
  validate(config);
  const UnitaryGate gate = make_gate(config.gate);
  const CorruptionSpec corruption_spec{config.eta, config.sigma, 0.0};

  // Per-experiment truth objects are built once.
  GammaBasis basis;
  ConfigurationSet configs;
  std::optional<ProcessMatrix> truth_chi;
  std::optional<ChoiState> truth_choi;
  if (config.scheme == Scheme::ProcessMatrix) {
    basis = config.basis_kind == BasisKind::Svd
                ? gamma_basis(config.basis_kind, gate.dim(), &gate)
                : gamma_basis(config.basis_kind, gate.dim());
    configs = build_configuration_set(gate.n_qubits);
    truth_chi = process_matrix_of_unitary(gate, basis);
  } else {
    truth_choi = choi_of_unitary(gate);
  }

  std::vector<SweepRecord> records;
  records.reserve(config.m_values.size() * static_cast<std::size_t>(config.runs));
  for (Index m : config.m_values) {
    for (int run = 0; run < config.runs; ++run) {
      const std::uint64_t child = derive_seed(config.seed, static_cast<std::uint64_t>(m),
                                              static_cast<std::uint64_t>(run));
      const std::uint64_t settings_seed = derive_seed(child, 1);
      const std::uint64_t noise_seed = derive_seed(child, 2);
      const std::uint64_t shot_seed = derive_seed(child, 3);

      const RealVector v = sparse_gaussian(m, corruption_spec, noise_seed);
      const auto t0 = std::chrono::steady_clock::now();
      RecoveryResult result;
      double fid = 0;
      if (config.scheme == Scheme::ChoiPauli) {
        const PauliObservableSet settings =
            sample_pauli_settings(gate.n_qubits, m, settings_seed);
        const RealVector y =
            simulate_choi_measurements(*truth_choi, settings, config.shots, v, shot_seed);
        result = solve_or_diagnostics([&] {
          return recover_choi(y, settings, config.tau1_rule.value(m), config.tau2, config.solver,
                              config.use_trace_norm);
        });
        fid = fidelity_normalized(project_psd(result.matrix_estimate), truth_choi->matrix);
      } else {
        Rng pick(settings_seed);
        const auto chosen = pick.sample_without_replacement(
            static_cast<std::size_t>(configs.m()), static_cast<std::size_t>(m));
        std::vector<Index> selected(chosen.begin(), chosen.end());
        const RealVector y =
            simulate_process_outcomes(*truth_chi, configs, selected, config.shots, v, shot_seed);
        const SensingMatrix phi = sensing_matrix(basis, configs, selected);
        result = solve_or_diagnostics([&] {
          return recover_process(y, phi, basis, config.mu1, config.mu2, config.solver);
        });
        fid = fidelity_normalized(project_psd(result.matrix_estimate), truth_chi->chi);
      }
      const auto t1 = std::chrono::steady_clock::now();

      SweepRecord rec;
      rec.m = m;
      rec.run_index = run;
      rec.fidelity = fid;
      rec.mse = mse(v, result.corruption_estimate);
      rec.iterations = result.iterations;
      rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
      rec.seed_used = child;
      records.push_back(rec);
      if (progress != nullptr)
        *progress << "m=" << m << " run=" << run << " F=" << fmt_double(fid)
                  << " mse=" << fmt_double(rec.mse) << " iters=" << rec.iterations
                  << (result.converged ? "" : " (max-iters)") << "\n";
    }
  }
  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return a.m != b.m ? a.m < b.m : a.run_index < b.run_index;
  });
  return records;
}

std::vector<SummaryRow> aggregate(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw ConfigError("aggregate: no records");
  std::vector<Index> ms;
  for (const SweepRecord& r : records) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  const auto stats_of = [](const std::vector<double>& xs) {
    SummaryStats s;
    const auto n = static_cast<double>(xs.size());
    s.min = *std::min_element(xs.begin(), xs.end());
    s.max = *std::max_element(xs.begin(), xs.end());
    for (double x : xs) s.mean += x;
    s.mean /= n;
    if (xs.size() > 1) {
      double acc = 0;
      for (double x : xs) acc += (x - s.mean) * (x - s.mean);
      s.std = std::sqrt(acc / (n - 1));
    }
    s.se = s.std / std::sqrt(n);
    return s;
  };

  std::vector<SummaryRow> rows;
  for (Index m : ms) {
    std::vector<double> fids, mses;
    for (const SweepRecord& r : records)
      if (r.m == m) {
        fids.push_back(r.fidelity);
        mses.push_back(r.mse);
      }
    SummaryRow row;
    row.m = m;
    row.fid = stats_of(fids);
    row.mse = stats_of(mses);
    row.n = static_cast<int>(fids.size());
    rows.push_back(row);
  }
  return rows;
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::string out = "m,run_index,fidelity,mse,iterations,wall_time_s,seed_used\n";
  for (const SweepRecord& r : records) {
    out += std::to_string(r.m) + "," + std::to_string(r.run_index) + "," +
           fmt_double(r.fidelity) + "," + fmt_double(r.mse) + "," + std::to_string(r.iterations) +
           "," + fmt_double(r.wall_time_s) + "," + std::to_string(r.seed_used) + "\n";
  }
  return out;
}

std::vector<SweepRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "m,run_index,fidelity,mse,iterations,wall_time_s,seed_used")
    throw ConfigError("records csv: unexpected header");
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw ConfigError("records csv: malformed row '" + line + "'");
    SweepRecord r;
    try {
      r.m = static_cast<Index>(std::stoll(fields[0]));
      r.run_index = std::stoi(fields[1]);
      r.fidelity = std::stod(fields[2]);
      r.mse = std::stod(fields[3]);
      r.iterations = std::stol(fields[4]);
      r.wall_time_s = std::stod(fields[5]);
      r.seed_used = std::stoull(fields[6]);
    } catch (const std::exception&) {
      throw ConfigError("records csv: malformed row '" + line + "'");
    }
    records.push_back(r);
  }
  return records;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "m,fid_mean,fid_std,fid_se,mse_mean,mse_std,mse_se,n\n";
  for (const SummaryRow& r : rows) {
    out += std::to_string(r.m) + "," + fmt_double(r.fid.mean) + "," + fmt_double(r.fid.std) + "," +
           fmt_double(r.fid.se) + "," + fmt_double(r.mse.mean) + "," + fmt_double(r.mse.std) +
           "," + fmt_double(r.mse.se) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cqpt

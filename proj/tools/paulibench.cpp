// Copyright 2026 The paulibench developers
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

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paulibench/bench.hpp"

namespace pb = paulibench;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

pb::Hamiltonian load_hamiltonian(const std::string& path, double prune) {
  pb::Hamiltonian h = pb::Hamiltonian::load(path);
  if (prune > 0) h = h.pruned(prune);
  return h;
}

pb::QuantumState make_state(const pb::Hamiltonian& h, const std::string& spec,
                            std::uint64_t seed) {
  if (spec == "ground") {
    return pb::ground_state(h).first;
  }
  if (spec.rfind("basis:", 0) == 0) {
    return pb::QuantumState::basis_state(
        h.num_qubits(), pb::Outcome::from_string(spec.substr(6)));
  }
  if (spec.rfind("ansatz:", 0) == 0) {
    pb::AnsatzSpec a;
    a.n = h.num_qubits();
    a.seed = seed;
    std::string rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      a.seed = std::stoull(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    a.depth = std::stoull(rest);
    return pb::random_ansatz_state(a);
  }
  throw pb::ConfigError("unknown state spec '" + spec +
                        "' (use ground, basis:BITS or ansatz:DEPTH[:SEED])");
}

std::unique_ptr<pb::QueryDistribution> make_method(const pb::Hamiltonian& h,
                                                   const std::string& name,
                                                   bool optimize_dd) {
  if (name == "cs") {
    return std::make_unique<pb::ProductDistribution>(
        pb::cs_distribution(h.num_qubits()));
  }
  if (name == "lbcs") {
    return std::make_unique<pb::ProductDistribution>(pb::lbcs_optimize(h));
  }
  if (name == "dd") {
    auto dd = pb::DecisionDiagram::build(h);
    return std::make_unique<pb::DecisionDiagram>(optimize_dd ? dd.optimized(h)
                                                             : dd);
  }
  if (name == "aps") {
    return std::make_unique<pb::AdaptiveSampler>(h);
  }
  throw pb::ConfigError("unknown method '" + name +
                        "' (use cs, lbcs, dd or aps)");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw pb::IoError("cannot write '" + path + "'");
  return out;
}

void print_histogram(const pb::HamiltonianSummary& summary, std::ostream& out) {
  std::size_t peak = 1;
  for (const auto& [w, c] : summary.weight_histogram) peak = std::max(peak, c);
  for (const auto& [w, c] : summary.weight_histogram) {
    const std::size_t bar = (60 * c + peak - 1) / peak;
    out << "wt " << w << " | " << std::string(bar, '#') << ' ' << c << '\n';
  }
}

int cmd_ham_info(const std::string& path, double prune) {
  const pb::Hamiltonian h = load_hamiltonian(path, prune);
  const auto summary = h.summarize();
  nlohmann::json j = summary.to_json();
  j["n"] = h.num_qubits();
  j["identity_offset"] = h.identity_offset();
  std::cout << j.dump(2) << '\n';
  print_histogram(summary, std::cout);
  return 0;
}

int cmd_dd(const std::string& path, bool optimize, double prune,
           const std::string& out_json, const std::string& out_dot) {
  const pb::Hamiltonian h = load_hamiltonian(path, prune);
  const auto t0 = std::chrono::steady_clock::now();
  pb::DecisionDiagram dd = pb::DecisionDiagram::build(h);
  if (optimize) dd = dd.optimized(h);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json row{{"nodes", dd.num_nodes()},
                     {"edges", dd.num_edges()},
                     {"paths", dd.path_count()},
                     {"diagonal_cost", pb::diagonal_cost(h, dd)},
                     {"lbcs_diagonal_cost_reference",
                      pb::diagonal_cost(h, pb::lbcs_optimize(h))},
                     {"build_seconds", seconds},
                     {"optimized", optimize}};
  std::cout << row.dump(2) << '\n';
  if (!out_json.empty()) open_out(out_json) << dd.to_json().dump(2) << '\n';
  if (!out_dot.empty()) open_out(out_dot) << dd.to_dot();
  return 0;
}

int cmd_derand(const std::string& path, const std::string& method,
               std::size_t budget, double epsilon, bool budget_free, double prune,
               const std::string& out_bases, const std::string& out_json) {
  const pb::Hamiltonian h = load_hamiltonian(path, prune);
  if (method == "aps") {
    throw pb::ConfigError("adaptive sampling has no coverage probabilities and "
                          "cannot be derandomized");
  }
  const auto dist = make_method(h, method, true);
  std::vector<pb::PauliString> targets;
  for (const auto& t : h.terms()) targets.push_back(t.pauli);

  pb::DerandConfig cfg;
  cfg.budget = budget;
  cfg.epsilon = epsilon;
  cfg.budget_free = budget_free;
  const pb::DerandResult result = pb::derandomize(targets, *dist, cfg);

  if (!out_bases.empty()) {
    auto out = open_out(out_bases);
    for (const auto& b : result.bases) out << b.str() << '\n';
  } else {
    for (const auto& b : result.bases) std::cout << b.str() << '\n';
  }
  nlohmann::json sidecar{{"method", method},
                         {"budget", budget},
                         {"epsilon", epsilon},
                         {"eta", cfg.eta()},
                         {"budget_free", budget_free},
                         {"final_conf", result.final_conf}};
  nlohmann::json uncovered = nlohmann::json::array();
  for (const std::size_t j : result.zero_coverage_targets) {
    uncovered.push_back(targets[j].str());
  }
  sidecar["zero_coverage_targets"] = uncovered;
  if (!out_json.empty()) {
    open_out(out_json) << sidecar.dump(2) << '\n';
  } else {
    std::cerr << sidecar.dump(2) << '\n';
  }
  return 0;
}

int cmd_sample(const std::string& path, const std::string& method,
               const std::string& state_spec, std::size_t shots,
               std::uint64_t seed, bool optimize_dd, double prune,
               const std::string& out_path) {
  const pb::Hamiltonian h = load_hamiltonian(path, prune);
  const pb::QuantumState state = make_state(h, state_spec, seed);
  const auto dist = make_method(h, method, optimize_dd);
  pb::Philox basis_rng(seed, 0), sim_rng(seed, 1);
  auto out = open_out(out_path);
  for (std::size_t s = 0; s < shots; ++s) {
    const pb::MeasurementBasis basis = dist->sample(basis_rng);
    const pb::Outcome y = pb::sample_outcome(state, basis, sim_rng);
    out << basis.str() << ' ' << y.str() << '\n';
  }
  return 0;
}

int cmd_estimate(const std::string& path, const std::string& records_path,
                 const std::string& estimator_name, double gamma,
                 const std::string& method, bool optimize_dd, double prune) {
  const pb::Hamiltonian h = load_hamiltonian(path, prune);
  const pb::EstimatorConfig config = pb::EstimatorConfig::parse(estimator_name, gamma);
  std::unique_ptr<pb::QueryDistribution> dist;
  if (config.kind == pb::EstimatorKind::Wmc) {
    if (method.empty()) {
      throw pb::ConfigError(
          "the weighted estimator needs --method to evaluate coverage");
    }
    dist = make_method(h, method, optimize_dd);
  }
  pb::Estimator estimator(h, config, dist.get());

  std::ifstream in(records_path);
  if (!in) throw pb::IoError("cannot open records '" + records_path + "'");
  std::string basis_text, outcome_text;
  std::size_t line = 0;
  while (in >> basis_text >> outcome_text) {
    ++line;
    try {
      estimator.add(pb::MeasurementBasis(basis_text),
                    pb::Outcome::from_string(outcome_text));
    } catch (const pb::InvalidArgument& e) {
      throw pb::ConfigError("record " + std::to_string(line) + ": " + e.what());
    }
  }
  nlohmann::json j = estimator.estimate().to_json();
  j["estimator"] = config.name();
  if (config.kind == pb::EstimatorKind::Mc) j["gamma"] = config.gamma;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_bench_run(const std::string& config_path, const std::string& out_dir) {
  const pb::BenchmarkConfig config = pb::BenchmarkConfig::load(config_path);
  const pb::BenchmarkReport report = pb::run_benchmark(config);
  pb::emit_report(report, config, out_dir);
  std::cout << pb::format_report(report.to_json());
  return 0;
}

int cmd_bench_report(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / "report.json");
  if (!in) throw pb::IoError("no report.json under '" + dir + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw pb::IoError("report.json is unreadable: " + std::string(e.what()));
  }
  std::cout << pb::format_report(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized and derandomized Pauli-measurement benchmarking"};
  app.require_subcommand(1);

  std::string ham_path, records_path, config_path, out_dir, report_dir;
  std::string method = "cs", state_spec = "ground", estimator_name = "bayes";
  std::string out_json, out_dot, out_bases, out_records = "records.txt";
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  double gamma = 0.0, epsilon = 0.1, prune = 0.0;
  bool budget_free = false, no_optimize = false;

  auto* ham = app.add_subcommand("ham", "Hamiltonian file utilities");
  auto* ham_info = ham->add_subcommand("info", "summarize a Hamiltonian file");
  ham_info->add_option("file", ham_path)->required();
  ham_info->add_option("--prune", prune, "drop |coeff| below this threshold");

  auto* dd = app.add_subcommand("dd", "decision diagram utilities");
  auto* dd_build = dd->add_subcommand("build", "build a diagram (uniform weights)");
  auto* dd_opt = dd->add_subcommand("optimize", "build and weight-optimize");
  for (auto* sub : {dd_build, dd_opt}) {
    sub->add_option("file", ham_path)->required();
    sub->add_option("--out", out_json, "write the diagram as JSON");
    sub->add_option("--dot", out_dot, "write a DOT rendering");
    sub->add_option("--prune", prune);
  }

  auto* derand = app.add_subcommand("derand", "derandomize a query distribution");
  derand->add_option("file", ham_path)->required();
  derand->add_option("--method", method, "cs, lbcs or dd")->capture_default_str();
  derand->add_option("-M,--budget", shots, "number of bases")->required();
  derand->add_option("--epsilon", epsilon)->capture_default_str();
  derand->add_flag("--budget-free", budget_free,
                   "drop the remaining-budget factor from the cost");
  derand->add_option("--out", out_bases, "bases file (one per line)");
  derand->add_option("--json", out_json, "settings and final confidence value");
  derand->add_option("--prune", prune);

  auto* sample = app.add_subcommand("sample", "simulate measurement records");
  sample->add_option("file", ham_path)->required();
  sample->add_option("--method", method, "cs, lbcs, dd or aps")->capture_default_str();
  sample->add_option("--state", state_spec, "ground, basis:BITS or ansatz:DEPTH[:SEED]")
      ->capture_default_str();
  sample->add_option("-M,--shots", shots)->capture_default_str();
  sample->add_option("--seed", seed)->capture_default_str();
  sample->add_option("--out", out_records)->capture_default_str();
  sample->add_flag("--no-dd-optimize", no_optimize);
  sample->add_option("--prune", prune);

  auto* estimate = app.add_subcommand("estimate", "estimate energy from records");
  estimate->add_option("file", ham_path)->required();
  estimate->add_option("--records", records_path)->required();
  estimate->add_option("--estimator", estimator_name, "mc, wmc or bayes")
      ->capture_default_str();
  estimate->add_option("--gamma", gamma, "smoothing (mc only)");
  estimate->add_option("--method", method,
                       "distribution for wmc coverage (cs, lbcs, dd)");
  estimate->add_flag("--no-dd-optimize", no_optimize);
  estimate->add_option("--prune", prune);

  auto* bench = app.add_subcommand("bench", "benchmark harness");
  auto* bench_run = bench->add_subcommand("run", "run a benchmark config");
  bench_run->add_option("--config", config_path)->required();
  bench_run->add_option("--out", out_dir)->required();
  auto* bench_report = bench->add_subcommand("report", "summarize an output dir");
  bench_report->add_option("dir", report_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ham_info) return cmd_ham_info(ham_path, prune);
    if (*dd_build) return cmd_dd(ham_path, false, prune, out_json, out_dot);
    if (*dd_opt) return cmd_dd(ham_path, true, prune, out_json, out_dot);
    if (*derand) {
      return cmd_derand(ham_path, method, shots, epsilon, budget_free, prune,
                        out_bases, out_json);
    }
    if (*sample) {
      return cmd_sample(ham_path, method, state_spec, shots, seed, !no_optimize,
                        prune, out_records);
    }
    if (*estimate) {
      return cmd_estimate(ham_path, records_path, estimator_name, gamma, method,
                          !no_optimize, prune);
    }
    if (*bench_run) return cmd_bench_run(config_path, out_dir);
    if (*bench_report) return cmd_bench_report(report_dir);
  } catch (const pb::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const pb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pb::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

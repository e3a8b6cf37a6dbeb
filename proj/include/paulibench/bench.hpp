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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "paulibench/decision_diagram.hpp"
#include "paulibench/derandomize.hpp"
#include "paulibench/estimators.hpp"
#include "paulibench/state.hpp"

namespace paulibench {

enum class Method { Cs, Lbcs, Dd, DerandCs, DerandLbcs, DerandDd, Aps };

std::string method_name(Method m);
Method method_from_name(const std::string& name);
bool is_derandomized(Method m);

/// State prepared on the simulator before measurement.
struct StateSpec {
  enum class Kind { Ground, Basis, Ansatz };
  Kind kind = Kind::Ground;
  std::string basis_bits;  // Kind::Basis
  std::size_t ansatz_depth = 4;
  std::optional<std::uint64_t> ansatz_seed;  // defaults to the master seed

  nlohmann::json to_json() const;
  static StateSpec from_json(const nlohmann::json& j);
};

struct ResourceRegime {
  std::string name;
  double w_c = 1.0;
  double w_q = 1.0;
};

struct ResourceModel {
  std::vector<ResourceRegime> regimes;
  double shot_delay = 5e-4;  // seconds of quantum wall clock per shot

  static ResourceModel defaults();  // regimes A (1,1) ... D (1, 2.5e6)
  nlohmann::json to_json() const;
  static ResourceModel from_json(const nlohmann::json& j);
};

struct BenchmarkConfig {
  std::filesystem::path hamiltonian_path;
  StateSpec state;
  std::vector<Method> methods{Method::Cs,       Method::Lbcs,       Method::Dd,
                              Method::DerandCs, Method::DerandLbcs, Method::DerandDd};
  EstimatorConfig estimator{EstimatorKind::Bayes, 0.0};
  std::vector<std::uint64_t> checkpoints;
  std::size_t repeats = 10;
  double cutoff = 5e-3;
  double epsilon = 0.1;       // derandomization accuracy parameter
  bool budget_free = false;   // derandomization cost without the budget factor
  std::uint64_t seed = 0;
  ResourceModel resource = ResourceModel::defaults();
  bool optimize_dd = true;
  double prune_threshold = 0.0;

  void validate() const;
  nlohmann::json to_json() const;
  static BenchmarkConfig from_json(const nlohmann::json& j);
  static BenchmarkConfig load(const std::filesystem::path& path);
};

/// sqrt(mean squared deviation from the truth).
double rmse(std::span<const double> estimates, double truth);

struct RmsePoint {
  std::uint64_t shots = 0;
  double value = 0.0;
};

/// Smallest budget at which the curve crosses the cutoff, interpolated
/// linearly in log-shots between the bracketing checkpoints. Empty when the
/// curve never reaches it.
std::optional<double> shots_to_cutoff(std::span<const RmsePoint> curve,
                                      double cutoff);

struct ShotStats {
  double median_all = 0.0;
  double median_top5 = 0.0;     // median of the ceil(5%) most-used circuits
  double median_bottom5 = 0.0;  // median of the ceil(5%) least-used circuits
};

ShotStats shot_distribution_stats(std::span<const std::uint64_t> counts);

struct ResourceScore {
  std::string regime;
  double r = 0.0;
  double log_r = 0.0;  // natural log
};

std::vector<ResourceScore> resource_scores(double classical_seconds,
                                           double quantum_seconds,
                                           const ResourceModel& model);

struct PhaseTimes {
  double setup = 0.0;     // distribution construction / derandomization
  double sampling = 0.0;  // proposing measurement bases
  double simulate = 0.0;  // drawing outcomes on the simulator
  double estimate = 0.0;  // tallying and estimator evaluation

  double classical_total() const { return setup + sampling + simulate + estimate; }
};

struct MethodReport {
  Method method = Method::Cs;
  std::vector<RmsePoint> rmse_curve;
  bool cutoff_reached = false;
  std::optional<double> shots_to_cutoff;

  std::uint64_t stats_budget = 0;  // checkpoint the circuit stats refer to
  double unique_bases = 0.0;       // mean over repeats
  ShotStats shot_stats;            // mean over repeats

  PhaseTimes times;  // mean per repeat; setup counted once
  double classical_at_cutoff = 0.0;
  double quantum_at_cutoff = 0.0;  // predicted, shots x shot_delay
  std::vector<ResourceScore> scores;

  bool degenerate_repeats = false;
  std::optional<double> derand_conf;
  std::vector<std::string> warnings;
  nlohmann::json method_detail;  // marginals, diagram counts, derand settings

  nlohmann::json to_json() const;
};

struct BenchmarkReport {
  nlohmann::json config_echo;
  double truth = 0.0;
  double state_setup_seconds = 0.0;
  std::uint64_t master_seed = 0;
  nlohmann::json hamiltonian_summary;
  std::vector<MethodReport> methods;

  nlohmann::json to_json() const;
};

BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Writes report.json, rmse.csv, weight_histogram.csv, per-method gnuplot
/// curves, and query-distribution side files into `out_dir`.
void emit_report(const BenchmarkReport& report, const BenchmarkConfig& config,
                 const std::filesystem::path& out_dir);

/// Human-readable summary of an emitted report directory.
std::string format_report(const nlohmann::json& report_json);

}  // namespace paulibench

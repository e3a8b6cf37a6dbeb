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

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "paulibench/sampling.hpp"

namespace paulibench {

struct DerandConfig {
  std::size_t budget = 0;    // number of bases to emit (M)
  double epsilon = 0.1;      // accuracy parameter of the confidence bound
  bool budget_free = false;  // drop the (1 - eta*coverage)^(M-m) factor

  double eta() const { return 1.0 - std::exp(-epsilon * epsilon / 2.0); }
};

/// Deviation proxy sum_j exp(-eps^2/2 * h_j) where h_j counts the bases
/// covering target j.
double confidence_bound(std::span<const PauliString> targets,
                        std::span<const MeasurementBasis> bases, double epsilon);

/// Same value in product form: sum_j prod_s (1 - eta * [covered]).
double confidence_bound_product(std::span<const PauliString> targets,
                                std::span<const MeasurementBasis> bases,
                                double epsilon);

struct DerandResult {
  std::vector<MeasurementBasis> bases;
  double final_conf = 0.0;
  std::vector<std::size_t> zero_coverage_targets;  // can never be covered by q
};

/// Greedy derandomization of a query distribution: letters are fixed one at a
/// time, each chosen to minimize the conditional expectation of the
/// confidence bound over the randomized remainder. Deterministic; ties break
/// as X < Y < Z.
class Derandomizer {
 public:
  Derandomizer(std::vector<PauliString> targets, const QueryDistribution& q,
               DerandConfig cfg);
  ~Derandomizer();
  Derandomizer(const Derandomizer&) = delete;
  Derandomizer& operator=(const Derandomizer&) = delete;

  /// E[confidence bound | committed bases, current partial basis, next letter
  /// = `candidate`]. +inf when the distribution cannot emit that letter here.
  double conditional_cost(Pauli candidate) const;

  std::array<double, 3> candidate_costs() const;  // indexed X, Y, Z

  /// Commits the argmin letter and returns it.
  Pauli choose_letter();

  bool done() const;
  std::size_t committed_count() const { return committed_.size(); }
  std::span<const Pauli> current_prefix() const { return prefix_; }

  /// Per-target running products over committed bases, recomputed from
  /// scratch (consistency oracle for the incrementally maintained state).
  std::vector<double> recompute_committed_products() const;
  std::span<const double> committed_products() const { return f1_; }

  DerandResult run();

  struct SuffixProvider;  // internal lookup strategy, defined in the .cpp

 private:
  void begin_basis();
  void finish_basis();

  std::vector<PauliString> targets_;
  const QueryDistribution& q_;
  DerandConfig cfg_;
  double eta_;
  std::size_t n_;

  std::vector<double> xi_;        // coverage probability per target
  std::vector<double> log_term_;  // log1p(-eta * xi) per target

  std::vector<MeasurementBasis> committed_;
  std::vector<double> f1_;        // prod over committed bases of (1 - eta*[hit])
  std::vector<Pauli> prefix_;     // letters of the in-progress basis
  std::vector<char> alive_;       // target prefix still compatible
  std::vector<double> f1t_;       // f1 * budget factor, fixed per basis
  double dead_sum_ = 0.0;         // sum of f1t over incompatible targets

  std::unique_ptr<SuffixProvider> provider_;
};

DerandResult derandomize(std::span<const PauliString> targets,
                         const QueryDistribution& q, const DerandConfig& cfg);

}  // namespace paulibench

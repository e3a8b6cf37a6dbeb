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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paulibench/hamiltonian.hpp"
#include "paulibench/pauli.hpp"
#include "paulibench/sampling.hpp"

namespace paulibench {

/// Per-target outcome counts: m0 shots with eigenvalue +1, m1 with -1, out of
/// the covering shots only. Merging partial tallies is associative and
/// commutative, so shot batches can be accumulated independently.
class TallySet {
 public:
  TallySet() = default;
  explicit TallySet(std::size_t num_targets)
      : m0_(num_targets, 0), m1_(num_targets, 0) {}

  std::size_t num_targets() const { return m0_.size(); }
  std::uint64_t total_shots() const { return shots_; }
  std::int64_t m0(std::size_t j) const { return m0_[j]; }
  std::int64_t m1(std::size_t j) const { return m1_[j]; }
  std::int64_t hits(std::size_t j) const { return m0_[j] + m1_[j]; }

  void add(std::size_t j, int eigenvalue) {
    if (eigenvalue > 0) {
      ++m0_[j];
    } else {
      ++m1_[j];
    }
  }
  void add_shot() { ++shots_; }

  void merge(const TallySet& other);

  friend bool operator==(const TallySet&, const TallySet&) = default;

 private:
  std::vector<std::int64_t> m0_, m1_;
  std::uint64_t shots_ = 0;
};

/// Streams (basis, outcome) records into a TallySet: each record updates
/// every covered target with the sign of its support parity. Per-basis
/// covered-target lists are cached, so repeated circuits tally cheaply.
class RecordIngestor {
 public:
  RecordIngestor(std::span<const PauliString> targets, std::size_t n);

  void add(const MeasurementBasis& basis, const Outcome& outcome);
  /// Allocation-free path for n <= 64: bit i of `outcome_bits` is qubit i.
  void add_index(const MeasurementBasis& basis, std::uint64_t outcome_bits);
  const TallySet& tallies() const { return tallies_; }
  std::size_t num_targets() const { return targets_.size(); }

 private:
  struct CoveredTarget {
    std::size_t index;
    std::vector<std::uint64_t> support_mask;
  };
  const std::vector<CoveredTarget>& covered_for(const MeasurementBasis& basis);

  std::size_t n_;
  std::vector<PauliString> targets_;
  std::map<PauliString, std::vector<CoveredTarget>> cache_;
  TallySet tallies_;
};

/// (m0 - m1) / (m0 + m1 + 2*gamma); zero when gamma = 0 and there are no hits.
std::vector<double> mc_estimates(const TallySet& t, double gamma);

/// (m0 - m1) / (shots * coverage). Coverage comes from the query
/// distribution, not from the empirical hit counts. A covered target with
/// zero stated coverage means the records and the distribution disagree.
std::vector<double> wmc_estimates(const TallySet& t,
                                  std::span<const double> coverage);

struct BayesEstimate {
  double mean = 0.0;
  double variance = 0.0;
};

/// Posterior under a uniform order-2 Dirichlet prior:
/// mean (m0-m1)/(m0+m1+2), variance 4(m0+1)(m1+1)/((m0+m1+2)(m0+m1+3)).
std::vector<BayesEstimate> bayes_estimates(const TallySet& t);

struct EnergyEstimate {
  double value = 0.0;  // includes the identity offset
  std::uint64_t shots = 0;
  std::vector<double> per_target;
  std::optional<std::vector<double>> variance_proxy;  // Bayesian only

  nlohmann::json to_json() const;
};

/// identity_offset + sum_j coeff_j * omega_j.
EnergyEstimate energy(const Hamiltonian& h, std::span<const double> omega,
                      std::uint64_t shots);

enum class EstimatorKind { Mc, Wmc, Bayes };

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Bayes;
  double gamma = 0.0;  // Laplace smoothing, MC only

  std::string name() const;
  static EstimatorConfig parse(const std::string& name, double gamma);
};

/// Streaming estimator: ingest records, ask for the energy at any point.
class Estimator {
 public:
  Estimator(const Hamiltonian& h, EstimatorConfig config,
            const QueryDistribution* q = nullptr);

  void add(const MeasurementBasis& basis, const Outcome& outcome) {
    ingestor_.add(basis, outcome);
  }
  void add_index(const MeasurementBasis& basis, std::uint64_t outcome_bits) {
    ingestor_.add_index(basis, outcome_bits);
  }
  EnergyEstimate estimate() const;
  const TallySet& tallies() const { return ingestor_.tallies(); }

 private:
  const Hamiltonian& h_;
  EstimatorConfig config_;
  std::vector<double> coverage_;  // WMC only
  RecordIngestor ingestor_;
};

}  // namespace paulibench

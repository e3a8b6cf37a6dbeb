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

#include "paulibench/estimators.hpp"

#include <algorithm>
#include <bit>

namespace paulibench {

void TallySet::merge(const TallySet& other) {
  if (other.m0_.size() != m0_.size()) {
    throw InvalidArgument("cannot merge tallies over different target sets");
  }
  for (std::size_t j = 0; j < m0_.size(); ++j) {
    m0_[j] += other.m0_[j];
    m1_[j] += other.m1_[j];
  }
  shots_ += other.shots_;
}

RecordIngestor::RecordIngestor(std::span<const PauliString> targets, std::size_t n)
    : n_(n), targets_(targets.begin(), targets.end()), tallies_(targets.size()) {
  for (const PauliString& t : targets_) {
    if (t.size() != n) throw InvalidArgument("target length mismatch");
  }
}

const std::vector<RecordIngestor::CoveredTarget>& RecordIngestor::covered_for(
    const MeasurementBasis& basis) {
  auto it = cache_.find(basis.pauli());
  if (it != cache_.end()) return it->second;
  std::vector<CoveredTarget> covered;
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (covers(targets_[j], basis.pauli())) {
      covered.push_back({j, targets_[j].support_mask()});
    }
  }
  return cache_.emplace(basis.pauli(), std::move(covered)).first->second;
}

void RecordIngestor::add(const MeasurementBasis& basis, const Outcome& outcome) {
  if (basis.size() != n_ || outcome.size() != n_) {
    throw InvalidArgument("record length mismatch");
  }
  for (const CoveredTarget& c : covered_for(basis)) {
    tallies_.add(c.index, eigenvalue_product_masked(outcome, c.support_mask));
  }
  tallies_.add_shot();
}

void RecordIngestor::add_index(const MeasurementBasis& basis,
                               std::uint64_t outcome_bits) {
  if (n_ > 64) throw InvalidArgument("add_index supports at most 64 qubits");
  if (basis.size() != n_) throw InvalidArgument("record length mismatch");
  for (const CoveredTarget& c : covered_for(basis)) {
    const int parity = std::popcount(outcome_bits & c.support_mask[0]) & 1;
    tallies_.add(c.index, parity ? -1 : +1);
  }
  tallies_.add_shot();
}

std::vector<double> mc_estimates(const TallySet& t, double gamma) {
  if (!(gamma >= 0)) throw InvalidArgument("smoothing parameter must be >= 0");
  std::vector<double> omega(t.num_targets(), 0.0);
  for (std::size_t j = 0; j < t.num_targets(); ++j) {
    const double denom = static_cast<double>(t.hits(j)) + 2 * gamma;
    if (denom > 0) {
      omega[j] = static_cast<double>(t.m0(j) - t.m1(j)) / denom;
    }
  }
  return omega;
}

std::vector<double> wmc_estimates(const TallySet& t,
                                  std::span<const double> coverage) {
  if (coverage.size() != t.num_targets()) {
    throw InvalidArgument("coverage list does not match target count");
  }
  std::vector<double> omega(t.num_targets(), 0.0);
  const double shots = static_cast<double>(t.total_shots());
  for (std::size_t j = 0; j < t.num_targets(); ++j) {
    if (t.hits(j) == 0) continue;
    if (!(coverage[j] > 0)) {
      throw InternalError(
          "target " + std::to_string(j) +
          " was covered by a record although its stated coverage is zero");
    }
    omega[j] = static_cast<double>(t.m0(j) - t.m1(j)) / (shots * coverage[j]);
  }
  return omega;
}

std::vector<BayesEstimate> bayes_estimates(const TallySet& t) {
  std::vector<BayesEstimate> out(t.num_targets());
  for (std::size_t j = 0; j < t.num_targets(); ++j) {
    const double m0 = static_cast<double>(t.m0(j));
    const double m1 = static_cast<double>(t.m1(j));
    out[j].mean = (m0 - m1) / (m0 + m1 + 2.0);
    out[j].variance =
        4.0 * (m0 + 1.0) * (m1 + 1.0) / ((m0 + m1 + 2.0) * (m0 + m1 + 3.0));
  }
  return out;
}

EnergyEstimate energy(const Hamiltonian& h, std::span<const double> omega,
                      std::uint64_t shots) {
  if (omega.size() != h.terms().size()) {
    throw InvalidArgument("per-target estimates do not align with the terms");
  }
  EnergyEstimate e;
  e.shots = shots;
  e.value = h.identity_offset();
  e.per_target.assign(omega.begin(), omega.end());
  for (std::size_t j = 0; j < omega.size(); ++j) {
    e.value += h.terms()[j].coeff * omega[j];
  }
  return e;
}

nlohmann::json EnergyEstimate::to_json() const {
  nlohmann::json j{{"energy", value}, {"shots", shots}, {"per_target", per_target}};
  if (variance_proxy) j["variance_proxy"] = *variance_proxy;
  return j;
}

std::string EstimatorConfig::name() const {
  switch (kind) {
    case EstimatorKind::Mc: return "mc";
    case EstimatorKind::Wmc: return "wmc";
    case EstimatorKind::Bayes: return "bayes";
  }
  return "?";
}

EstimatorConfig EstimatorConfig::parse(const std::string& name, double gamma) {
  EstimatorConfig c;
  c.gamma = gamma;
  if (name == "mc") {
    c.kind = EstimatorKind::Mc;
  } else if (name == "wmc") {
    c.kind = EstimatorKind::Wmc;
  } else if (name == "bayes" || name == "bayesian") {
    c.kind = EstimatorKind::Bayes;
  } else {
    throw ConfigError("unknown estimator '" + name + "' (use mc, wmc or bayes)");
  }
  if (!(c.gamma >= 0)) throw ConfigError("smoothing parameter must be >= 0");
  return c;
}

namespace {

std::vector<PauliString> target_list(const Hamiltonian& h) {
  std::vector<PauliString> targets;
  targets.reserve(h.terms().size());
  for (const auto& t : h.terms()) targets.push_back(t.pauli);
  return targets;
}

}  // namespace

Estimator::Estimator(const Hamiltonian& h, EstimatorConfig config,
                     const QueryDistribution* q)
    : h_(h), config_(config), ingestor_(target_list(h), h.num_qubits()) {
  if (config_.kind == EstimatorKind::Wmc) {
    if (q == nullptr || !q->can_evaluate_coverage()) {
      throw ConfigError(
          "the weighted estimator needs a query distribution with coverage "
          "probabilities");
    }
    coverage_.reserve(h.terms().size());
    for (const auto& t : h.terms()) {
      coverage_.push_back(q->coverage_probability(t.pauli));
    }
  }
}

EnergyEstimate Estimator::estimate() const {
  const TallySet& t = ingestor_.tallies();
  EnergyEstimate e;
  switch (config_.kind) {
    case EstimatorKind::Mc:
      e = energy(h_, mc_estimates(t, config_.gamma), t.total_shots());
      break;
    case EstimatorKind::Wmc:
      e = energy(h_, wmc_estimates(t, coverage_), t.total_shots());
      break;
    case EstimatorKind::Bayes: {
      const auto est = bayes_estimates(t);
      std::vector<double> means(est.size());
      std::vector<double> vars(est.size());
      for (std::size_t j = 0; j < est.size(); ++j) {
        means[j] = est[j].mean;
        vars[j] = est[j].variance;
      }
      e = energy(h_, means, t.total_shots());
      e.variance_proxy = std::move(vars);
      break;
    }
  }
  return e;
}

}  // namespace paulibench

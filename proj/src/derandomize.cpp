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

#include "paulibench/derandomize.hpp"

#include <cmath>
#include <limits>

#include "paulibench/decision_diagram.hpp"

namespace paulibench {

double confidence_bound(std::span<const PauliString> targets,
                        std::span<const MeasurementBasis> bases, double epsilon) {
  if (!(epsilon > 0)) throw InvalidArgument("confidence bound needs epsilon > 0");
  double conf = 0;
  for (const PauliString& q : targets) {
    std::size_t hits = 0;
    for (const MeasurementBasis& b : bases) {
      if (covers(q, b.pauli())) ++hits;
    }
    conf += std::exp(-epsilon * epsilon / 2.0 * static_cast<double>(hits));
  }
  return conf;
}

double confidence_bound_product(std::span<const PauliString> targets,
                                std::span<const MeasurementBasis> bases,
                                double epsilon) {
  if (!(epsilon > 0)) throw InvalidArgument("confidence bound needs epsilon > 0");
  const double eta = 1.0 - std::exp(-epsilon * epsilon / 2.0);
  double conf = 0;
  for (const PauliString& q : targets) {
    double f = 1.0;
    for (const MeasurementBasis& b : bases) {
      if (covers(q, b.pauli())) f *= 1.0 - eta;
    }
    conf += f;
  }
  return conf;
}

// ---------------------------------------------------------------------------

/// Conditional suffix-coverage lookups for the inner loop: one virtual call
/// per (candidate, target) is too slow for diagram-backed distributions, so
/// the provider memoizes whatever the distribution type allows.
struct Derandomizer::SuffixProvider {
  virtual ~SuffixProvider() = default;
  virtual std::array<bool, 3> candidates() const = 0;
  /// Pr[target j's suffix beyond the candidate position is covered | current
  /// prefix extended with `letter`].
  virtual double suffix(std::size_t j, Pauli letter) const = 0;
  virtual void push_letter(Pauli letter) = 0;
  virtual void reset_basis() = 0;
};

namespace {

/// Product distributions: suffix coverage is a per-position product that does
/// not depend on the prefix, so one table serves every step.
struct ProductProvider : Derandomizer::SuffixProvider {
  std::size_t n;
  std::size_t pos = 0;
  // tail[j][k] = prod over positions >= k with a non-identity target letter
  // of that letter's marginal.
  std::vector<std::vector<double>> tail;

  ProductProvider(const ProductDistribution& dist,
                  std::span<const PauliString> targets)
      : n(dist.num_qubits()) {
    tail.resize(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
      tail[j].assign(n + 1, 1.0);
      for (std::size_t k = n; k-- > 0;) {
        const Pauli letter = targets[j].letter(k);
        const double factor =
            letter == Pauli::I ? 1.0
                               : dist.marginals()[k][letter_index(letter)];
        tail[j][k] = tail[j][k + 1] * factor;
      }
    }
  }

  std::array<bool, 3> candidates() const override { return {true, true, true}; }
  double suffix(std::size_t j, Pauli) const override { return tail[j][pos + 1]; }
  void push_letter(Pauli) override { ++pos; }
  void reset_basis() override { pos = 0; }
};

/// Decision diagrams: the prefix pins a unique node; suffix coverage is a
/// (node, target) table filled by one backward sweep per target.
struct DiagramProvider : Derandomizer::SuffixProvider {
  const DecisionDiagram& dd;
  int node;
  std::vector<std::vector<double>> cov;  // [target][node]

  DiagramProvider(const DecisionDiagram& dd_, std::span<const PauliString> targets)
      : dd(dd_), node(DecisionDiagram::kRoot) {
    cov.reserve(targets.size());
    for (const PauliString& t : targets) cov.push_back(dd.coverage_by_node(t));
  }

  std::array<bool, 3> candidates() const override {
    const auto& nd = dd.nodes()[node];
    return {nd.child[0] >= 0, nd.child[1] >= 0, nd.child[2] >= 0};
  }

  double suffix(std::size_t j, Pauli letter) const override {
    const int child = dd.nodes()[node].child[letter_index(letter)];
    return child < 0 ? 0.0 : cov[j][child];
  }

  void push_letter(Pauli letter) override {
    node = dd.nodes()[node].child[letter_index(letter)];
    if (node < 0) throw InternalError("derandomization left the diagram");
  }

  void reset_basis() override { node = DecisionDiagram::kRoot; }
};

/// Anything else goes through the virtual QueryDistribution interface.
struct GenericProvider : Derandomizer::SuffixProvider {
  const QueryDistribution& q;
  std::span<const PauliString> targets;
  std::vector<Pauli> prefix;

  GenericProvider(const QueryDistribution& q_, std::span<const PauliString> targets_)
      : q(q_), targets(targets_) {}

  std::array<bool, 3> candidates() const override {
    return q.candidate_letters(prefix);
  }

  double suffix(std::size_t j, Pauli letter) const override {
    std::vector<Pauli> extended = prefix;
    extended.push_back(letter);
    return q.suffix_coverage(extended, targets[j]);
  }

  void push_letter(Pauli letter) override { prefix.push_back(letter); }
  void reset_basis() override { prefix.clear(); }
};

}  // namespace

Derandomizer::Derandomizer(std::vector<PauliString> targets,
                           const QueryDistribution& q, DerandConfig cfg)
    : targets_(std::move(targets)), q_(q), cfg_(cfg), eta_(cfg.eta()),
      n_(q.num_qubits()) {
  if (targets_.empty()) throw InvalidArgument("derandomization needs targets");
  if (!(cfg_.epsilon > 0)) throw InvalidArgument("derandomization needs epsilon > 0");
  if (!q.can_evaluate_coverage()) {
    throw InvalidArgument("derandomization needs coverage probabilities");
  }
  for (const PauliString& t : targets_) {
    if (t.size() != n_) throw InvalidArgument("target length mismatch");
  }
  xi_.reserve(targets_.size());
  log_term_.reserve(targets_.size());
  for (const PauliString& t : targets_) {
    const double xi = q.coverage_probability(t);
    xi_.push_back(xi);
    log_term_.push_back(std::log1p(-eta_ * xi));
  }
  f1_.assign(targets_.size(), 1.0);

  if (const auto* dd = dynamic_cast<const DecisionDiagram*>(&q)) {
    provider_ = std::make_unique<DiagramProvider>(*dd, targets_);
  } else if (const auto* prod = dynamic_cast<const ProductDistribution*>(&q)) {
    provider_ = std::make_unique<ProductProvider>(*prod, targets_);
  } else {
    provider_ = std::make_unique<GenericProvider>(q, targets_);
  }
  begin_basis();
}

Derandomizer::~Derandomizer() = default;

void Derandomizer::begin_basis() {
  prefix_.clear();
  provider_->reset_basis();
  alive_.assign(targets_.size(), 1);
  dead_sum_ = 0.0;
  f1t_.resize(targets_.size());
  const std::size_t m = committed_.size() + 1;  // 1-based index of this basis
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    double t = 1.0;
    if (!cfg_.budget_free && cfg_.budget >= m) {
      t = std::exp(static_cast<double>(cfg_.budget - m) * log_term_[j]);
    }
    f1t_[j] = f1_[j] * t;
  }
}

double Derandomizer::conditional_cost(Pauli candidate) const {
  if (candidate == Pauli::I) {
    throw InvalidArgument("measurement letters are X, Y or Z");
  }
  if (!provider_->candidates()[letter_index(candidate)]) {
    return std::numeric_limits<double>::infinity();
  }
  const std::size_t k = prefix_.size();
  double cost = dead_sum_;
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (!alive_[j]) continue;
    const Pauli want = targets_[j].letter(k);
    if (want == Pauli::I || want == candidate) {
      cost += f1t_[j] * (1.0 - eta_ * provider_->suffix(j, candidate));
    } else {
      cost += f1t_[j];  // dies under this candidate
    }
  }
  return cost;
}

std::array<double, 3> Derandomizer::candidate_costs() const {
  return {conditional_cost(Pauli::X), conditional_cost(Pauli::Y),
          conditional_cost(Pauli::Z)};
}

Pauli Derandomizer::choose_letter() {
  if (done()) throw InternalError("derandomization already complete");
  const auto costs = candidate_costs();
  int best = -1;
  for (int l = 0; l < 3; ++l) {
    if (best < 0 || costs[l] < costs[best]) best = l;
  }
  if (!std::isfinite(costs[best])) {
    throw InternalError("no letter available at the current position");
  }
  const Pauli chosen = letter_from_index(best);
  const std::size_t k = prefix_.size();
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (!alive_[j]) continue;
    const Pauli want = targets_[j].letter(k);
    if (want != Pauli::I && want != chosen) {
      alive_[j] = 0;
      dead_sum_ += f1t_[j];
    }
  }
  prefix_.push_back(chosen);
  provider_->push_letter(chosen);
  if (prefix_.size() == n_) finish_basis();
  return chosen;
}

void Derandomizer::finish_basis() {
  PauliString letters(n_, Pauli::I);
  for (std::size_t q = 0; q < n_; ++q) letters.set_letter(q, prefix_[q]);
  committed_.push_back(MeasurementBasis(std::move(letters)));
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (alive_[j]) f1_[j] *= 1.0 - eta_;  // this basis covers target j
  }
  if (!done()) begin_basis();
}

bool Derandomizer::done() const { return committed_.size() >= cfg_.budget; }

std::vector<double> Derandomizer::recompute_committed_products() const {
  std::vector<double> f1(targets_.size(), 1.0);
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    for (const MeasurementBasis& b : committed_) {
      if (covers(targets_[j], b.pauli())) f1[j] *= 1.0 - eta_;
    }
  }
  return f1;
}

DerandResult Derandomizer::run() {
  while (!done()) choose_letter();
  DerandResult result;
  result.bases = committed_;
  result.final_conf = 0;
  for (double f : f1_) result.final_conf += f;
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (xi_[j] <= 0.0) result.zero_coverage_targets.push_back(j);
  }
  return result;
}

DerandResult derandomize(std::span<const PauliString> targets,
                         const QueryDistribution& q, const DerandConfig& cfg) {
  if (cfg.budget == 0) {
    DerandResult empty;
    empty.final_conf = static_cast<double>(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (q.coverage_probability(targets[j]) <= 0.0) {
        empty.zero_coverage_targets.push_back(j);
      }
    }
    return empty;
  }
  Derandomizer d(std::vector<PauliString>(targets.begin(), targets.end()), q, cfg);
  return d.run();
}

}  // namespace paulibench

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

#include "paulibench/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paulibench {

namespace {

constexpr double kSimplexTolerance = 1e-12;

}  // namespace

ProductDistribution::ProductDistribution(std::vector<LetterTriple> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw InvalidArgument("empty product distribution");
  for (std::size_t q = 0; q < marginals_.size(); ++q) {
    double sum = 0;
    for (double p : marginals_[q]) {
      if (!(p >= 0.0)) {
        throw InvalidArgument("negative letter probability on qubit " +
                              std::to_string(q));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      throw InvalidArgument("letter probabilities on qubit " + std::to_string(q) +
                            " sum to " + std::to_string(sum));
    }
  }
}

MeasurementBasis ProductDistribution::sample(Philox& rng) const {
  PauliString p(marginals_.size(), Pauli::X);
  for (std::size_t q = 0; q < marginals_.size(); ++q) {
    const LetterTriple& m = marginals_[q];
    const double u = rng.next_double();
    if (u < m[0]) {
      p.set_letter(q, Pauli::X);
    } else if (u < m[0] + m[1]) {
      p.set_letter(q, Pauli::Y);
    } else {
      p.set_letter(q, Pauli::Z);
    }
  }
  return MeasurementBasis(std::move(p));
}

double ProductDistribution::pmf(const MeasurementBasis& basis) const {
  if (basis.size() != marginals_.size()) {
    throw InvalidArgument("pmf: basis length mismatch");
  }
  double p = 1.0;
  for (std::size_t q = 0; q < marginals_.size(); ++q) {
    p *= marginals_[q][letter_index(basis.letter(q))];
  }
  return p;
}

double ProductDistribution::coverage_probability(const PauliString& target) const {
  if (target.size() != marginals_.size()) {
    throw InvalidArgument("coverage_probability: target length mismatch");
  }
  double xi = 1.0;
  for (std::size_t q = 0; q < marginals_.size(); ++q) {
    const Pauli letter = target.letter(q);
    if (letter != Pauli::I) xi *= marginals_[q][letter_index(letter)];
  }
  return xi;
}

double ProductDistribution::suffix_coverage(std::span<const Pauli> prefix,
                                            const PauliString& target) const {
  if (target.size() != marginals_.size() || prefix.size() > target.size()) {
    throw InvalidArgument("suffix_coverage: length mismatch");
  }
  double xi = 1.0;
  for (std::size_t q = prefix.size(); q < marginals_.size(); ++q) {
    const Pauli letter = target.letter(q);
    if (letter != Pauli::I) xi *= marginals_[q][letter_index(letter)];
  }
  return xi;
}

nlohmann::json ProductDistribution::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : marginals_) rows.push_back({m[0], m[1], m[2]});
  return {{"marginals", rows}};
}

ProductDistribution ProductDistribution::from_json(const nlohmann::json& j) {
  std::vector<LetterTriple> marginals;
  for (const auto& row : j.at("marginals")) {
    marginals.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                         row.at(2).get<double>()});
  }
  return ProductDistribution(std::move(marginals));
}

ProductDistribution cs_distribution(std::size_t n) {
  if (n == 0) throw InvalidArgument("cs_distribution: need n >= 1");
  const double third = 1.0 / 3.0;
  return ProductDistribution(
      std::vector<LetterTriple>(n, LetterTriple{third, third, third}));
}

DiagonalCost diagonal_cost_detail(const Hamiltonian& h, const QueryDistribution& q) {
  if (!q.can_evaluate_coverage()) {
    throw InvalidArgument("diagonal cost needs coverage probabilities");
  }
  DiagonalCost cost;
  for (std::size_t j = 0; j < h.terms().size(); ++j) {
    const auto& t = h.terms()[j];
    const double xi = q.coverage_probability(t.pauli);
    if (xi <= 0.0) {
      cost.uncovered_terms.push_back(j);
    } else {
      cost.value += t.coeff * t.coeff / xi;
    }
  }
  if (cost.flagged()) cost.value = std::numeric_limits<double>::infinity();
  return cost;
}

double diagonal_cost(const Hamiltonian& h, const QueryDistribution& q) {
  return diagonal_cost_detail(h, q).value;
}

namespace {

// Cost and per-letter gradient of the product-form diagonal cost. The
// gradient entry for (qubit q, letter l) is
//   -sum over terms with letter l on qubit q of coeff^2 / (xi * beta_q(l)).
double product_cost_and_gradient(const Hamiltonian& h,
                                 const std::vector<LetterTriple>& beta,
                                 std::vector<LetterTriple>* grad) {
  double cost = 0;
  if (grad) {
    grad->assign(beta.size(), LetterTriple{0, 0, 0});
  }
  for (const auto& t : h.terms()) {
    double xi = 1.0;
    for (std::size_t q = 0; q < beta.size(); ++q) {
      const Pauli letter = t.pauli.letter(q);
      if (letter != Pauli::I) xi *= beta[q][letter_index(letter)];
    }
    if (xi <= 0.0) return std::numeric_limits<double>::infinity();
    const double term = t.coeff * t.coeff / xi;
    cost += term;
    if (grad) {
      for (std::size_t q = 0; q < beta.size(); ++q) {
        const Pauli letter = t.pauli.letter(q);
        if (letter != Pauli::I) {
          (*grad)[q][letter_index(letter)] -= term / beta[q][letter_index(letter)];
        }
      }
    }
  }
  return cost;
}

}  // namespace

ProductDistribution lbcs_optimize(const Hamiltonian& h, const LbcsOptions& opts) {
  if (h.terms().empty()) {
    throw InvalidArgument("cannot optimize a query distribution for a Hamiltonian "
                          "with no non-identity terms");
  }
  const std::size_t n = h.num_qubits();
  std::vector<LetterTriple> beta(n, LetterTriple{1.0 / 3, 1.0 / 3, 1.0 / 3});
  std::vector<LetterTriple> grad;
  double cost = product_cost_and_gradient(h, beta, &grad);

  double step = 1.0 / std::max(cost, 1.0);
  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    // Multiplicative (exponentiated-gradient) update with backtracking so the
    // cost is non-increasing: beta <- beta * exp(-step * grad), renormalized
    // per qubit.
    std::vector<LetterTriple> next(n);
    double next_cost = std::numeric_limits<double>::infinity();
    bool improved = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t q = 0; q < n; ++q) {
        double lo = std::numeric_limits<double>::infinity();
        for (int l = 0; l < 3; ++l) lo = std::min(lo, step * grad[q][l]);
        double sum = 0;
        for (int l = 0; l < 3; ++l) {
          next[q][l] = beta[q][l] * std::exp(-(step * grad[q][l] - lo));
          sum += next[q][l];
        }
        for (int l = 0; l < 3; ++l) next[q][l] /= sum;
      }
      next_cost = product_cost_and_gradient(h, next, nullptr);
      if (next_cost < cost) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    const double gain = cost - next_cost;
    beta = std::move(next);
    cost = product_cost_and_gradient(h, beta, &grad);
    step *= 1.5;
    if (gain < opts.improvement_tolerance) break;
  }
  return ProductDistribution(std::move(beta));
}

LetterTriple adaptive_marginal(const LetterTriple& letter_weights) {
  LetterTriple beta{};
  double sum = 0;
  for (int l = 0; l < 3; ++l) {
    if (letter_weights[l] < 0) {
      throw InvalidArgument("adaptive_marginal: negative letter weight");
    }
    beta[l] = std::sqrt(letter_weights[l]);
    sum += beta[l];
  }
  if (sum == 0) return {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int l = 0; l < 3; ++l) beta[l] /= sum;
  return beta;
}

AdaptiveSampler::AdaptiveSampler(const Hamiltonian& h) : n_(h.num_qubits()) {
  if (h.terms().empty()) {
    throw InvalidArgument("adaptive sampling needs at least one non-identity term");
  }
  targets_.reserve(h.terms().size());
  coeff_sq_.reserve(h.terms().size());
  for (const auto& t : h.terms()) {
    targets_.push_back(t.pauli);
    coeff_sq_.push_back(t.coeff * t.coeff);
  }
}

MeasurementBasis AdaptiveSampler::sample(Philox& rng) const {
  std::vector<std::size_t> order(n_);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));

  PauliString basis(n_, Pauli::X);
  // Targets still compatible with the letters decided so far.
  std::vector<bool> alive(targets_.size(), true);
  for (std::size_t qubit : order) {
    LetterTriple weights{0, 0, 0};
    for (std::size_t j = 0; j < targets_.size(); ++j) {
      if (!alive[j]) continue;
      const Pauli letter = targets_[j].letter(qubit);
      if (letter != Pauli::I) weights[letter_index(letter)] += coeff_sq_[j];
    }
    const LetterTriple marginal = adaptive_marginal(weights);
    const Pauli chosen = letter_from_index(
        static_cast<int>(rng.discrete(std::span<const double>(marginal))));
    basis.set_letter(qubit, chosen);
    for (std::size_t j = 0; j < targets_.size(); ++j) {
      if (!alive[j]) continue;
      const Pauli letter = targets_[j].letter(qubit);
      if (letter != Pauli::I && letter != chosen) alive[j] = false;
    }
  }
  return MeasurementBasis(std::move(basis));
}

}  // namespace paulibench

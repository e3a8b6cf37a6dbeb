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
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "paulibench/hamiltonian.hpp"
#include "paulibench/pauli.hpp"
#include "paulibench/rng.hpp"

namespace paulibench {

/// Marginal over the three measurement letters, indexed X=0, Y=1, Z=2.
using LetterTriple = std::array<double, 3>;

inline int letter_index(Pauli p) { return static_cast<int>(p) - 1; }
inline Pauli letter_from_index(int i) { return static_cast<Pauli>(i + 1); }

/// Distribution over full-weight measurement bases. Samplers always exist;
/// pmf and coverage evaluation are capabilities some methods lack.
class QueryDistribution {
 public:
  virtual ~QueryDistribution() = default;

  virtual std::size_t num_qubits() const = 0;
  virtual MeasurementBasis sample(Philox& rng) const = 0;

  virtual bool can_evaluate_pmf() const { return false; }
  virtual double pmf(const MeasurementBasis&) const {
    throw InvalidArgument("pmf is not available for this measurement method");
  }

  virtual bool can_evaluate_coverage() const { return false; }
  /// Probability that a sampled basis covers `target`.
  virtual double coverage_probability(const PauliString&) const {
    throw InvalidArgument("coverage probability is not available for this method");
  }

  /// Letters that may extend the partial basis `prefix` (all three unless the
  /// method constrains the query support, as decision diagrams do).
  virtual std::array<bool, 3> candidate_letters(std::span<const Pauli> prefix) const {
    (void)prefix;
    return {true, true, true};
  }

  /// Pr[letters k+1..n of a sampled basis cover the target's suffix | the
  /// basis starts with the k-letter `prefix`]. Required for derandomization.
  virtual double suffix_coverage(std::span<const Pauli> prefix,
                                 const PauliString& target) const {
    (void)prefix;
    (void)target;
    throw InvalidArgument("conditional coverage is not available for this method");
  }
};

/// Product distribution: independent letter marginal per qubit.
class ProductDistribution : public QueryDistribution {
 public:
  explicit ProductDistribution(std::vector<LetterTriple> marginals);

  std::size_t num_qubits() const override { return marginals_.size(); }
  const std::vector<LetterTriple>& marginals() const { return marginals_; }

  MeasurementBasis sample(Philox& rng) const override;
  bool can_evaluate_pmf() const override { return true; }
  double pmf(const MeasurementBasis& basis) const override;
  bool can_evaluate_coverage() const override { return true; }
  double coverage_probability(const PauliString& target) const override;
  double suffix_coverage(std::span<const Pauli> prefix,
                         const PauliString& target) const override;

  nlohmann::json to_json() const;
  static ProductDistribution from_json(const nlohmann::json& j);

 private:
  std::vector<LetterTriple> marginals_;
};

/// Uniform letter marginals: every basis has probability 3^-n.
ProductDistribution cs_distribution(std::size_t n);

struct LbcsOptions {
  std::size_t max_iterations = 10000;
  double improvement_tolerance = 1e-10;
};

/// Product distribution minimizing the diagonal cost of `h`, found by
/// exponentiated-gradient descent on each qubit's simplex starting from the
/// uniform point. Deterministic for a fixed Hamiltonian.
ProductDistribution lbcs_optimize(const Hamiltonian& h, const LbcsOptions& opts = {});

struct DiagonalCost {
  double value = 0.0;  // +inf when some term has zero coverage
  std::vector<std::size_t> uncovered_terms;

  bool flagged() const { return !uncovered_terms.empty(); }
};

/// One-shot variance proxy of the energy estimate under the maximally mixed
/// state: sum over non-identity terms of coeff^2 / coverage(term).
DiagonalCost diagonal_cost_detail(const Hamiltonian& h, const QueryDistribution& q);
double diagonal_cost(const Hamiltonian& h, const QueryDistribution& q);

/// Closed-form minimizer of sum_P c_P / beta_P over the letter simplex:
/// beta_P proportional to sqrt(c_P). Uniform when all weights vanish.
LetterTriple adaptive_marginal(const LetterTriple& letter_weights);

/// Adaptive per-sample method: each basis is grown letter by letter in a
/// freshly randomized qubit order, each letter drawn from the marginal that
/// minimizes the squared-coefficient cost over the targets still compatible
/// with the partial basis. No joint pmf or coverage is available.
class AdaptiveSampler : public QueryDistribution {
 public:
  explicit AdaptiveSampler(const Hamiltonian& h);

  std::size_t num_qubits() const override { return n_; }
  MeasurementBasis sample(Philox& rng) const override;

 private:
  std::size_t n_;
  std::vector<PauliString> targets_;
  std::vector<double> coeff_sq_;
};

}  // namespace paulibench

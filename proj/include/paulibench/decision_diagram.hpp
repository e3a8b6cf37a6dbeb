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
#include <cstdint>
#include <string>
#include <vector>

#include "paulibench/sampling.hpp"

namespace paulibench {

/// Targets coverable at each node: bit j of sets[v] is set iff target j's
/// prefix (letters before the node's layer) is covered by some root-to-node
/// partial path. Root and terminal are pinned to the full target set.
struct CoverableSets {
  std::size_t num_targets = 0;
  std::vector<std::vector<std::uint64_t>> sets;  // per node, bitset over targets

  bool contains(int node, std::size_t target) const {
    return (sets[node][target / 64] >> (target % 64)) & 1u;
  }
};

struct DdOptimizeOptions {
  std::size_t max_iterations = 5000;
  double improvement_tolerance = 1e-10;  // relative
};

/// Layered acyclic diagram over measurement letters. Every root-to-terminal
/// path has exactly n edges; edge weights out of a node sum to one, so a
/// random walk from the root samples a measurement basis whose probability is
/// the product of traversed edge weights.
class DecisionDiagram : public QueryDistribution {
 public:
  struct Node {
    int layer = 0;
    std::array<int, 3> child{-1, -1, -1};      // successor per letter, -1 = absent
    std::array<double, 3> weight{0.0, 0.0, 0.0};

    int out_degree() const {
      return (child[0] >= 0) + (child[1] >= 0) + (child[2] >= 0);
    }
  };

  static constexpr int kRoot = 0;
  static constexpr int kTerminal = 1;

  /// Validating constructor from raw nodes (node 0 = root at layer 0, node 1
  /// = terminal at layer n, edges only between adjacent layers).
  DecisionDiagram(std::size_t n, std::vector<Node> nodes);

  /// Builds a compact diagram covering every non-identity term of `h`:
  /// targets are routed in order of descending weight then descending |coeff|,
  /// reusing compatible edges (preferring the branch whose subtree can cover
  /// the most of the still-unrouted targets), and suffix-equal nodes are
  /// merged after each insertion. Weights start uniform per node.
  static DecisionDiagram build(const Hamiltonian& h);

  std::size_t num_qubits() const override { return n_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const;
  std::uint64_t path_count() const;

  MeasurementBasis sample(Philox& rng) const override;
  bool can_evaluate_pmf() const override { return true; }
  double pmf(const MeasurementBasis& basis) const override;
  bool can_evaluate_coverage() const override { return true; }
  double coverage_probability(const PauliString& target) const override;

  std::array<bool, 3> candidate_letters(std::span<const Pauli> prefix) const override;
  double suffix_coverage(std::span<const Pauli> prefix,
                         const PauliString& target) const override;

  /// Node reached by following the prefix letters from the root, or -1 if
  /// some letter has no edge.
  int node_after_prefix(std::span<const Pauli> prefix) const;

  /// Pr[the walk's remaining letters cover target[layer(node)..n) | at node].
  /// Terminal (empty suffix) gives 1.
  double conditional_coverage(int node, const PauliString& target) const;

  /// conditional_coverage for every node at once (one backward sweep).
  std::vector<double> coverage_by_node(const PauliString& target) const;

  /// All root-to-terminal label sequences with their path probabilities
  /// (zero-weight edges included, with pmf 0).
  std::vector<std::pair<MeasurementBasis, double>> enumerate_paths() const;

  CoverableSets coverable_sets(std::span<const PauliString> targets) const;

  /// Edge weights moved to a local minimum of the diagonal cost of `h` by
  /// gradient descent on per-node softmax parameters with backtracking line
  /// search. The result never costs more than the starting point.
  DecisionDiagram optimized(const Hamiltonian& h,
                            const DdOptimizeOptions& opts = {}) const;

  nlohmann::json to_json() const;
  static DecisionDiagram from_json(const nlohmann::json& j);
  std::string to_dot() const;

 private:
  DecisionDiagram() = default;
  void validate() const;

  std::size_t n_ = 0;
  std::vector<Node> nodes_;
};

}  // namespace paulibench

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

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "paulibench/decision_diagram.hpp"
#include "paulibench/hamiltonian.hpp"
#include "paulibench/rng.hpp"

namespace paulibench::test_support {

inline Hamiltonian parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  return Hamiltonian::from_text(in);
}

/// All Pauli words of length n, full weight when requested.
inline std::vector<PauliString> all_paulis(std::size_t n, bool full_weight) {
  std::vector<PauliString> out;
  const int base = full_weight ? 3 : 4;
  const int offset = full_weight ? 1 : 0;
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= base;
  for (std::size_t code = 0; code < count; ++code) {
    PauliString p(n, Pauli::I);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      p.set_letter(i, static_cast<Pauli>(offset + c % base));
      c /= base;
    }
    out.push_back(p);
  }
  return out;
}

/// Random Hamiltonian with distinct non-identity targets and coefficients in
/// [-1, 1]. Deterministic in the generator state.
inline Hamiltonian random_hamiltonian(std::size_t n, std::size_t terms,
                                      Philox& rng) {
  std::size_t available = 1;
  for (std::size_t i = 0; i < n && available < 1u << 20; ++i) available *= 4;
  if (terms > available - 1) terms = available - 1;
  std::map<PauliString, double> seen;
  while (seen.size() < terms) {
    PauliString p(n, Pauli::I);
    bool nontrivial = false;
    for (std::size_t q = 0; q < n; ++q) {
      const auto letter = static_cast<Pauli>(rng.uniform_index(4));
      p.set_letter(q, letter);
      nontrivial = nontrivial || letter != Pauli::I;
    }
    if (nontrivial) seen.emplace(p, 2.0 * rng.next_double() - 1.0);
  }
  std::vector<HamiltonianTerm> list;
  for (const auto& [pauli, coeff] : seen) list.push_back({coeff, pauli});
  return Hamiltonian(n, std::move(list), 0.0);
}

/// Random layered diagram with 1..3 nodes per layer and 1..3 labeled edges
/// per node (so at most 3^n paths). With `dyadic`, weights are exact binary
/// fractions so path sums are exact in double arithmetic.
inline DecisionDiagram random_diagram(std::size_t n, Philox& rng, bool dyadic) {
  std::vector<DecisionDiagram::Node> nodes(2);
  nodes[DecisionDiagram::kRoot] = {0, {-1, -1, -1}, {0, 0, 0}};
  nodes[DecisionDiagram::kTerminal] = {static_cast<int>(n), {-1, -1, -1}, {0, 0, 0}};
  std::vector<std::vector<int>> layers(n + 1);
  layers[0] = {DecisionDiagram::kRoot};
  layers[n] = {DecisionDiagram::kTerminal};
  for (std::size_t l = 1; l < n; ++l) {
    const std::size_t width = 1 + rng.uniform_index(3);
    for (std::size_t k = 0; k < width; ++k) {
      layers[l].push_back(static_cast<int>(nodes.size()));
      nodes.push_back({static_cast<int>(l), {-1, -1, -1}, {0, 0, 0}});
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    for (const int v : layers[l]) {
      const std::size_t degree = 1 + rng.uniform_index(3);
      int letters[3] = {0, 1, 2};
      rng.shuffle(std::span<int>(letters));
      std::vector<double> weights(degree);
      if (dyadic) {
        if (degree == 1) {
          weights = {1.0};
        } else if (degree == 2) {
          const double w = 0.25 * static_cast<double>(1 + rng.uniform_index(3));
          weights = {w, 1.0 - w};
        } else {
          weights = {0.25, 0.25, 0.5};
          rng.shuffle(std::span<double>(weights));
        }
      } else {
        double sum = 0;
        for (auto& w : weights) {
          w = 0.1 + rng.next_double();
          sum += w;
        }
        for (auto& w : weights) w /= sum;
      }
      for (std::size_t e = 0; e < degree; ++e) {
        const int letter = letters[e];
        const auto& next = layers[l + 1];
        nodes[v].child[letter] = next[rng.uniform_index(next.size())];
        nodes[v].weight[letter] = weights[e];
      }
    }
  }
  return DecisionDiagram(n, std::move(nodes));
}

}  // namespace paulibench::test_support

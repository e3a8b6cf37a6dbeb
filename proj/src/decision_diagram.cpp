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

#include "paulibench/decision_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace paulibench {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

}  // namespace

DecisionDiagram::DecisionDiagram(std::size_t n, std::vector<Node> nodes)
    : n_(n), nodes_(std::move(nodes)) {
  validate();
}

void DecisionDiagram::validate() const {
  if (n_ == 0) throw InvalidArgument("decision diagram needs n >= 1");
  if (nodes_.size() < 2) throw InvalidArgument("decision diagram needs root and terminal");
  if (nodes_[kRoot].layer != 0) throw InvalidArgument("root must sit in layer 0");
  if (nodes_[kTerminal].layer != static_cast<int>(n_)) {
    throw InvalidArgument("terminal must sit in layer n");
  }
  if (nodes_[kTerminal].out_degree() != 0) {
    throw InvalidArgument("terminal must have no outgoing edges");
  }
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const Node& node = nodes_[v];
    if (node.layer < 0 || node.layer > static_cast<int>(n_)) {
      throw InvalidArgument("node layer out of range");
    }
    if (v != kTerminal && node.layer == static_cast<int>(n_)) {
      throw InvalidArgument("only the terminal may sit in layer n");
    }
    double sum = 0;
    for (int l = 0; l < 3; ++l) {
      if (node.child[l] < 0) {
        if (node.weight[l] != 0.0) {
          throw InvalidArgument("weight on absent edge");
        }
        continue;
      }
      const int c = node.child[l];
      if (c >= static_cast<int>(nodes_.size())) {
        throw InvalidArgument("edge points past the node table");
      }
      if (nodes_[c].layer != node.layer + 1) {
        throw InvalidArgument("edges must connect adjacent layers");
      }
      if (!(node.weight[l] >= 0.0) || node.weight[l] > 1.0 + kWeightSumTolerance) {
        throw InvalidArgument("edge weight outside [0, 1]");
      }
      sum += node.weight[l];
    }
    if (v != kTerminal && node.out_degree() == 0) {
      // Unreachable stubs are tolerated only if nothing points at them; the
      // reachability check below rejects dead ends on live paths.
      continue;
    }
    if (v != kTerminal && std::abs(sum - 1.0) > kWeightSumTolerance) {
      throw InvalidArgument("outgoing weights of node " + std::to_string(v) +
                            " sum to " + std::to_string(sum));
    }
  }
  // Every node reachable from the root must reach the terminal through n edges.
  std::vector<char> reachable(nodes_.size(), 0);
  reachable[kRoot] = 1;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (!reachable[v]) continue;
    for (int l = 0; l < 3; ++l) {
      if (nodes_[v].child[l] >= 0) reachable[nodes_[v].child[l]] = 1;
    }
  }
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (reachable[v] && v != kTerminal && nodes_[v].out_degree() == 0) {
      throw InvalidArgument("reachable node " + std::to_string(v) +
                            " is a dead end before the terminal");
    }
  }
}

std::size_t DecisionDiagram::num_edges() const {
  std::size_t count = 0;
  for (const Node& node : nodes_) count += node.out_degree();
  return count;
}

std::uint64_t DecisionDiagram::path_count() const {
  std::vector<std::uint64_t> paths(nodes_.size(), 0);
  paths[kTerminal] = 1;
  // Process by descending layer.
  std::vector<std::size_t> order(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes_[a].layer > nodes_[b].layer;
  });
  for (std::size_t v : order) {
    if (v == kTerminal) continue;
    for (int l = 0; l < 3; ++l) {
      if (nodes_[v].child[l] >= 0) paths[v] += paths[nodes_[v].child[l]];
    }
  }
  return paths[kRoot];
}

MeasurementBasis DecisionDiagram::sample(Philox& rng) const {
  PauliString p(n_, Pauli::X);
  int v = kRoot;
  for (std::size_t q = 0; q < n_; ++q) {
    const Node& node = nodes_[v];
    const double u = rng.next_double();
    double acc = 0;
    int chosen = -1;
    for (int l = 0; l < 3; ++l) {
      if (node.child[l] < 0) continue;
      acc += node.weight[l];
      chosen = l;
      if (u < acc) break;
    }
    if (chosen < 0) throw InternalError("walk reached a dead end");
    p.set_letter(q, letter_from_index(chosen));
    v = node.child[chosen];
  }
  return MeasurementBasis(std::move(p));
}

double DecisionDiagram::pmf(const MeasurementBasis& basis) const {
  if (basis.size() != n_) throw InvalidArgument("pmf: basis length mismatch");
  double p = 1.0;
  int v = kRoot;
  for (std::size_t q = 0; q < n_; ++q) {
    const int l = letter_index(basis.letter(q));
    if (nodes_[v].child[l] < 0) return 0.0;
    p *= nodes_[v].weight[l];
    v = nodes_[v].child[l];
  }
  return p;
}

int DecisionDiagram::node_after_prefix(std::span<const Pauli> prefix) const {
  int v = kRoot;
  for (Pauli letter : prefix) {
    if (letter == Pauli::I) throw InvalidArgument("prefix contains identity letter");
    const int c = nodes_[v].child[letter_index(letter)];
    if (c < 0) return -1;
    v = c;
  }
  return v;
}

std::array<bool, 3> DecisionDiagram::candidate_letters(
    std::span<const Pauli> prefix) const {
  const int v = node_after_prefix(prefix);
  if (v < 0) return {false, false, false};
  return {nodes_[v].child[0] >= 0, nodes_[v].child[1] >= 0, nodes_[v].child[2] >= 0};
}

std::vector<double> DecisionDiagram::coverage_by_node(const PauliString& target) const {
  if (target.size() != n_) {
    throw InvalidArgument("coverage: target length mismatch");
  }
  std::vector<double> cov(nodes_.size(), 0.0);
  cov[kTerminal] = 1.0;
  std::vector<std::size_t> order(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes_[a].layer > nodes_[b].layer;
  });
  for (std::size_t v : order) {
    if (v == kTerminal) continue;
    const Node& node = nodes_[v];
    const Pauli want = target.letter(node.layer);
    double acc = 0;
    for (int l = 0; l < 3; ++l) {
      if (node.child[l] < 0) continue;
      if (want == Pauli::I || letter_index(want) == l) {
        acc += node.weight[l] * cov[node.child[l]];
      }
    }
    cov[v] = acc;
  }
  return cov;
}

double DecisionDiagram::conditional_coverage(int node, const PauliString& target) const {
  if (node < 0 || node >= static_cast<int>(nodes_.size())) {
    throw InvalidArgument("conditional_coverage: bad node id");
  }
  return coverage_by_node(target)[node];
}

double DecisionDiagram::coverage_probability(const PauliString& target) const {
  return coverage_by_node(target)[kRoot];
}

double DecisionDiagram::suffix_coverage(std::span<const Pauli> prefix,
                                        const PauliString& target) const {
  const int v = node_after_prefix(prefix);
  if (v < 0) return 0.0;
  return coverage_by_node(target)[v];
}

std::vector<std::pair<MeasurementBasis, double>> DecisionDiagram::enumerate_paths()
    const {
  std::vector<std::pair<MeasurementBasis, double>> out;
  PauliString letters(n_, Pauli::X);
  auto walk = [&](auto&& self, int v, std::size_t depth, double prob) -> void {
    if (depth == n_) {
      out.emplace_back(MeasurementBasis(letters), prob);
      return;
    }
    const Node& node = nodes_[v];
    for (int l = 0; l < 3; ++l) {
      if (node.child[l] < 0) continue;
      letters.set_letter(depth, letter_from_index(l));
      self(self, node.child[l], depth + 1, prob * node.weight[l]);
    }
  };
  walk(walk, kRoot, 0, 1.0);
  return out;
}

CoverableSets DecisionDiagram::coverable_sets(
    std::span<const PauliString> targets) const {
  const std::size_t words = (targets.size() + 63) / 64;
  CoverableSets cs;
  cs.num_targets = targets.size();
  cs.sets.assign(nodes_.size(), std::vector<std::uint64_t>(words, 0));

  std::vector<std::uint64_t> all(words, 0);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    all[j / 64] |= std::uint64_t{1} << (j % 64);
  }
  cs.sets[kRoot] = all;
  cs.sets[kTerminal] = all;

  std::vector<std::size_t> order(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes_[a].layer < nodes_[b].layer;
  });

  // Forward pass: a child inherits the parent's coverable targets whose letter
  // on the edge's layer is the edge label or identity.
  for (std::size_t v : order) {
    const Node& node = nodes_[v];
    if (static_cast<int>(v) == kTerminal) continue;
    for (int l = 0; l < 3; ++l) {
      const int c = node.child[l];
      if (c < 0 || c == kTerminal) continue;
      for (std::size_t j = 0; j < targets.size(); ++j) {
        if (!cs.contains(static_cast<int>(v), j)) continue;
        const Pauli letter = targets[j].letter(node.layer);
        if (letter == Pauli::I || letter_index(letter) == l) {
          cs.sets[c][j / 64] |= std::uint64_t{1} << (j % 64);
        }
      }
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

struct Builder {
  std::size_t n;
  std::vector<DecisionDiagram::Node> nodes;

  explicit Builder(std::size_t n_) : n(n_) {
    nodes.push_back({0, {-1, -1, -1}, {0, 0, 0}});                       // root
    nodes.push_back({static_cast<int>(n_), {-1, -1, -1}, {0, 0, 0}});    // terminal
  }

  int new_node(int layer) {
    nodes.push_back({layer, {-1, -1, -1}, {0, 0, 0}});
    return static_cast<int>(nodes.size()) - 1;
  }

  // True iff some path from `v` covers target[layer(v)..n).
  bool can_cover_suffix(int v, const PauliString& target,
                        std::unordered_map<int, char>& memo) const {
    if (v == DecisionDiagram::kTerminal) return true;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    const auto& node = nodes[v];
    const Pauli want = target.letter(node.layer);
    bool ok = false;
    for (int l = 0; l < 3 && !ok; ++l) {
      if (node.child[l] < 0) continue;
      if (want == Pauli::I || letter_index(want) == l) {
        ok = can_cover_suffix(node.child[l], target, memo);
      }
    }
    memo[v] = ok;
    return ok;
  }

  void route(const PauliString& target,
             std::span<const PauliString> remaining) {
    int v = DecisionDiagram::kRoot;
    for (std::size_t q = 0; q < n; ++q) {
      const Pauli want = target.letter(q);
      auto& node = nodes[v];
      int chosen = -1;
      if (want != Pauli::I) {
        chosen = letter_index(want);
        if (node.child[chosen] < 0) {
          const int next =
              (q + 1 == n) ? DecisionDiagram::kTerminal : new_node(static_cast<int>(q) + 1);
          nodes[v].child[chosen] = next;
        }
      } else {
        // Identity matches any label: reuse the branch whose subtree can
        // already cover the most of the still-unrouted targets.
        int best_score = -1;
        for (int l = 0; l < 3; ++l) {
          if (node.child[l] < 0) continue;
          int score = 0;
          for (const PauliString& q_rem : remaining) {
            std::unordered_map<int, char> memo;
            if (can_cover_suffix(node.child[l], q_rem, memo)) ++score;
          }
          if (score > best_score) {
            best_score = score;
            chosen = l;
          }
        }
        if (chosen < 0) {
          chosen = letter_index(Pauli::Z);  // fresh branch defaults to Z
          const int next =
              (q + 1 == n) ? DecisionDiagram::kTerminal : new_node(static_cast<int>(q) + 1);
          nodes[v].child[chosen] = next;
        }
      }
      v = nodes[v].child[chosen];
    }
  }

  // Merge nodes with identical outgoing (label -> child) maps, bottom-up.
  void reduce() {
    for (int layer = static_cast<int>(n) - 1; layer >= 1; --layer) {
      std::map<std::array<int, 3>, int> reps;
      std::vector<std::pair<int, int>> remap;  // old id -> representative
      for (std::size_t v = 2; v < nodes.size(); ++v) {
        if (nodes[v].layer != layer) continue;
        auto [it, inserted] = reps.try_emplace(nodes[v].child, static_cast<int>(v));
        if (!inserted) remap.emplace_back(static_cast<int>(v), it->second);
      }
      if (remap.empty()) continue;
      std::unordered_map<int, int> remap_table(remap.begin(), remap.end());
      for (auto& node : nodes) {
        for (int l = 0; l < 3; ++l) {
          if (node.child[l] < 0) continue;
          if (auto it = remap_table.find(node.child[l]); it != remap_table.end()) {
            node.child[l] = it->second;
          }
        }
      }
      for (const auto& [dead, rep] : remap) {
        (void)rep;
        nodes[dead].child = {-1, -1, -1};  // orphaned; dropped at compaction
      }
    }
  }

  DecisionDiagram finish() {
    reduce();
    // Compact: keep root, terminal, and nodes reachable from the root, in
    // (layer, id) order so construction stays deterministic.
    std::vector<char> reachable(nodes.size(), 0);
    reachable[DecisionDiagram::kRoot] = 1;
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (!reachable[v]) continue;
      for (int l = 0; l < 3; ++l) {
        if (nodes[v].child[l] >= 0) reachable[nodes[v].child[l]] = 1;
      }
    }
    std::vector<std::size_t> keep;
    for (std::size_t v = 2; v < nodes.size(); ++v) {
      if (reachable[v]) keep.push_back(v);
    }
    std::stable_sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
      return nodes[a].layer < nodes[b].layer;
    });
    std::vector<int> new_id(nodes.size(), -1);
    new_id[DecisionDiagram::kRoot] = DecisionDiagram::kRoot;
    new_id[DecisionDiagram::kTerminal] = DecisionDiagram::kTerminal;
    std::vector<DecisionDiagram::Node> out;
    out.push_back(nodes[DecisionDiagram::kRoot]);
    out.push_back(nodes[DecisionDiagram::kTerminal]);
    for (std::size_t v : keep) {
      new_id[v] = static_cast<int>(out.size());
      out.push_back(nodes[v]);
    }
    for (auto& node : out) {
      int degree = 0;
      for (int l = 0; l < 3; ++l) {
        if (node.child[l] >= 0) {
          node.child[l] = new_id[node.child[l]];
          ++degree;
        }
      }
      // Uniform initial weights.
      for (int l = 0; l < 3; ++l) {
        node.weight[l] = node.child[l] >= 0 ? 1.0 / degree : 0.0;
      }
    }
    return DecisionDiagram(n, std::move(out));
  }
};

}  // namespace

DecisionDiagram DecisionDiagram::build(const Hamiltonian& h) {
  if (h.terms().empty()) {
    throw InvalidArgument("cannot build a decision diagram without targets");
  }
  std::vector<PauliString> targets;
  targets.reserve(h.terms().size());
  {
    std::vector<std::size_t> order(h.terms().size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ta = h.terms()[a];
      const auto& tb = h.terms()[b];
      const int wa = ta.pauli.weight(), wb = tb.pauli.weight();
      if (wa != wb) return wa > wb;
      const double ca = std::abs(ta.coeff), cb = std::abs(tb.coeff);
      if (ca != cb) return ca > cb;
      return ta.pauli < tb.pauli;
    });
    for (std::size_t j : order) targets.push_back(h.terms()[j].pauli);
  }
  Builder builder(h.num_qubits());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    builder.route(targets[j],
                  std::span<const PauliString>(targets).subspan(j + 1));
    builder.reduce();
  }
  return builder.finish();
}

// ---------------------------------------------------------------------------
// Weight optimization

namespace {

struct FreeNode {
  int node;
  std::array<int, 3> param{-1, -1, -1};  // parameter index per present edge
};

}  // namespace

DecisionDiagram DecisionDiagram::optimized(const Hamiltonian& h,
                                           const DdOptimizeOptions& opts) const {
  if (h.num_qubits() != n_) {
    throw InvalidArgument("optimize: Hamiltonian qubit count mismatch");
  }
  DecisionDiagram dd = *this;

  std::vector<FreeNode> free_nodes;
  std::size_t num_params = 0;
  for (std::size_t v = 0; v < dd.nodes_.size(); ++v) {
    if (dd.nodes_[v].out_degree() < 2) continue;
    FreeNode fn;
    fn.node = static_cast<int>(v);
    for (int l = 0; l < 3; ++l) {
      if (dd.nodes_[v].child[l] >= 0) fn.param[l] = static_cast<int>(num_params++);
    }
    free_nodes.push_back(fn);
  }
  if (free_nodes.empty()) return dd;

  // Softmax parametrization per node keeps every weight positive and the
  // per-node simplex constraint implicit.
  std::vector<double> z(num_params);
  for (const FreeNode& fn : free_nodes) {
    for (int l = 0; l < 3; ++l) {
      if (fn.param[l] >= 0) {
        z[fn.param[l]] = std::log(std::max(dd.nodes_[fn.node].weight[l], 1e-12));
      }
    }
  }

  auto apply_weights = [&](const std::vector<double>& params) {
    for (const FreeNode& fn : free_nodes) {
      Node& node = dd.nodes_[fn.node];
      double hi = -std::numeric_limits<double>::infinity();
      for (int l = 0; l < 3; ++l) {
        if (fn.param[l] >= 0) hi = std::max(hi, params[fn.param[l]]);
      }
      double sum = 0;
      for (int l = 0; l < 3; ++l) {
        if (fn.param[l] >= 0) {
          node.weight[l] = std::exp(params[fn.param[l]] - hi);
          sum += node.weight[l];
        }
      }
      for (int l = 0; l < 3; ++l) {
        if (fn.param[l] >= 0) node.weight[l] /= sum;
      }
    }
  };

  // Nodes ordered by layer, once, for the forward/backward sweeps.
  std::vector<std::size_t> fwd_order(dd.nodes_.size());
  for (std::size_t v = 0; v < dd.nodes_.size(); ++v) fwd_order[v] = v;
  std::stable_sort(fwd_order.begin(), fwd_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dd.nodes_[a].layer < dd.nodes_[b].layer;
                   });
  std::vector<std::size_t> bwd_order(fwd_order.rbegin(), fwd_order.rend());

  std::vector<double> cov(dd.nodes_.size());
  auto fill_coverage = [&](const PauliString& target) {
    std::fill(cov.begin(), cov.end(), 0.0);
    cov[kTerminal] = 1.0;
    for (std::size_t v : bwd_order) {
      if (v == kTerminal) continue;
      const Node& node = dd.nodes_[v];
      const Pauli want = target.letter(node.layer);
      double acc = 0;
      for (int l = 0; l < 3; ++l) {
        if (node.child[l] < 0) continue;
        if (want == Pauli::I || letter_index(want) == l) {
          acc += node.weight[l] * cov[node.child[l]];
        }
      }
      cov[v] = acc;
    }
  };

  // Cost and gradient w.r.t. the softmax parameters. For each target, the
  // derivative of its coverage w.r.t. an edge weight is (probability of
  // reaching the edge's source while covering the target's prefix) x
  // (conditional coverage of the suffix from the edge's head).
  std::vector<double> reach(dd.nodes_.size());
  auto cost_and_gradient = [&](std::vector<double>* grad) {
    std::vector<double> weight_grad;
    if (grad) {
      grad->assign(num_params, 0.0);
      weight_grad.assign(num_params, 0.0);
    }
    double cost = 0;
    for (const auto& term : h.terms()) {
      fill_coverage(term.pauli);
      const double xi = cov[kRoot];
      if (xi <= 0.0) return std::numeric_limits<double>::infinity();
      const double a2 = term.coeff * term.coeff;
      cost += a2 / xi;
      if (!grad) continue;
      std::fill(reach.begin(), reach.end(), 0.0);
      reach[kRoot] = 1.0;
      for (std::size_t v : fwd_order) {
        if (v == kTerminal || reach[v] == 0.0) continue;
        const Node& node = dd.nodes_[v];
        const Pauli want = term.pauli.letter(node.layer);
        for (int l = 0; l < 3; ++l) {
          if (node.child[l] < 0) continue;
          if (want == Pauli::I || letter_index(want) == l) {
            reach[node.child[l]] += reach[v] * node.weight[l];
          }
        }
      }
      const double scale = -a2 / (xi * xi);
      for (const FreeNode& fn : free_nodes) {
        const Node& node = dd.nodes_[fn.node];
        const Pauli want = term.pauli.letter(node.layer);
        for (int l = 0; l < 3; ++l) {
          if (fn.param[l] < 0) continue;
          if (want == Pauli::I || letter_index(want) == l) {
            weight_grad[fn.param[l]] += scale * reach[fn.node] * cov[node.child[l]];
          }
        }
      }
    }
    if (grad) {
      // Chain rule through the per-node softmax.
      for (const FreeNode& fn : free_nodes) {
        const Node& node = dd.nodes_[fn.node];
        double inner = 0;
        for (int l = 0; l < 3; ++l) {
          if (fn.param[l] >= 0) inner += node.weight[l] * weight_grad[fn.param[l]];
        }
        for (int l = 0; l < 3; ++l) {
          if (fn.param[l] >= 0) {
            (*grad)[fn.param[l]] =
                node.weight[l] * (weight_grad[fn.param[l]] - inner);
          }
        }
      }
    }
    return cost;
  };

  apply_weights(z);
  std::vector<double> grad;
  double cost = cost_and_gradient(&grad);
  double step = 1.0;
  std::vector<double> trial(num_params);
  auto eval_at = [&](double t) {
    for (std::size_t i = 0; i < num_params; ++i) trial[i] = z[i] - t * grad[i];
    apply_weights(trial);
    return cost_and_gradient(nullptr);
  };
  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    double gnorm = 0;
    for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
    if (gnorm < 1e-13) break;
    // Backtrack until the step improves, then expand while it keeps improving.
    bool improved = false;
    double trial_cost = cost;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial_cost = eval_at(step);
      if (trial_cost < cost) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      apply_weights(z);  // restore the last accepted point
      break;
    }
    for (int growth = 0; growth < 40; ++growth) {
      const double wider = eval_at(step * 2);
      if (wider < trial_cost) {
        trial_cost = wider;
        step *= 2;
      } else {
        break;
      }
    }
    for (std::size_t i = 0; i < num_params; ++i) z[i] -= step * grad[i];
    apply_weights(z);
    const double gain = cost - trial_cost;
    cost = trial_cost;
    cost_and_gradient(&grad);
    if (gain < opts.improvement_tolerance * std::max(1.0, std::abs(cost))) break;
  }
  apply_weights(z);
  return dd;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json DecisionDiagram::to_json() const {
  auto public_id = [&](int v) { return v == kTerminal ? -1 : (v == kRoot ? 0 : v); };
  nlohmann::json node_list = nlohmann::json::array();
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    node_list.push_back(
        {{"id", public_id(static_cast<int>(v))}, {"layer", nodes_[v].layer}});
  }
  nlohmann::json edge_list = nlohmann::json::array();
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    for (int l = 0; l < 3; ++l) {
      if (nodes_[v].child[l] < 0) continue;
      edge_list.push_back({{"from", public_id(static_cast<int>(v))},
                           {"to", public_id(nodes_[v].child[l])},
                           {"label", std::string(1, pauli_to_char(letter_from_index(l)))},
                           {"weight", nodes_[v].weight[l]}});
    }
  }
  return {{"n", n_}, {"nodes", node_list}, {"edges", edge_list}};
}

DecisionDiagram DecisionDiagram::from_json(const nlohmann::json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  std::unordered_map<int, int> id_map;  // public id -> internal index
  std::vector<Node> nodes;
  for (const auto& jn : j.at("nodes")) {
    const int pub = jn.at("id").get<int>();
    const int layer = jn.at("layer").get<int>();
    int internal;
    if (pub == 0) {
      internal = kRoot;
    } else if (pub == -1) {
      internal = kTerminal;
    } else {
      internal = -2;  // assigned below
    }
    if (internal >= 0) {
      while (static_cast<int>(nodes.size()) <= internal) nodes.push_back({});
      nodes[internal].layer = layer;
      id_map[pub] = internal;
    } else {
      while (nodes.size() < 2) nodes.push_back({});
      id_map[pub] = static_cast<int>(nodes.size());
      nodes.push_back({layer, {-1, -1, -1}, {0, 0, 0}});
    }
  }
  if (!id_map.count(0) || !id_map.count(-1)) {
    throw InvalidArgument("diagram JSON needs a root (id 0) and terminal (id -1)");
  }
  for (const auto& je : j.at("edges")) {
    const auto from = id_map.find(je.at("from").get<int>());
    const auto to = id_map.find(je.at("to").get<int>());
    if (from == id_map.end() || to == id_map.end()) {
      throw InvalidArgument("diagram edge references unknown node");
    }
    const std::string label = je.at("label").get<std::string>();
    if (label.size() != 1) throw InvalidArgument("edge label must be one letter");
    const int l = letter_index(pauli_from_char(label[0]));
    if (l < 0) throw InvalidArgument("edge label must be X, Y or Z");
    Node& node = nodes[from->second];
    if (node.child[l] >= 0) {
      throw InvalidArgument("duplicate edge label on one node");
    }
    node.child[l] = to->second;
    node.weight[l] = je.at("weight").get<double>();
  }
  return DecisionDiagram(n, std::move(nodes));
}

std::string DecisionDiagram::to_dot() const {
  std::ostringstream out;
  out << "digraph dd {\n  rankdir=TB;\n";
  auto public_id = [&](int v) { return v == kTerminal ? -1 : v; };
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    out << "  n" << v << " [label=\"" << public_id(static_cast<int>(v)) << "\"];\n";
  }
  out.precision(4);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    for (int l = 0; l < 3; ++l) {
      if (nodes_[v].child[l] < 0) continue;
      out << "  n" << v << " -> n" << nodes_[v].child[l] << " [label=\""
          << pauli_to_char(letter_from_index(l)) << " " << nodes_[v].weight[l]
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace paulibench

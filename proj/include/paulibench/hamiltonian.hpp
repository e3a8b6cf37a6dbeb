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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "paulibench/pauli.hpp"

namespace paulibench {

struct HamiltonianTerm {
  double coeff = 0.0;
  PauliString pauli;
};

struct HamiltonianSummary {
  std::size_t term_count = 0;
  std::map<int, std::size_t> weight_histogram;  // weight -> # terms
  double one_norm = 0.0;
  int max_weight = 0;

  nlohmann::json to_json() const;
};

/// Observable given as a real linear combination of distinct non-identity
/// Pauli words plus an identity offset.
class Hamiltonian {
 public:
  enum class Format { Auto, Text, Json };

  /// Validates: consistent lengths, no duplicates, finite coefficients.
  /// Identity terms are folded into the offset.
  Hamiltonian(std::size_t n, std::vector<HamiltonianTerm> terms,
              double identity_offset = 0.0);

  std::size_t num_qubits() const { return n_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  double identity_offset() const { return identity_offset_; }

  static Hamiltonian load(const std::filesystem::path& path,
                          Format format = Format::Auto);
  void save(const std::filesystem::path& path, Format format = Format::Auto) const;

  /// Text form: one "PAULI coefficient" per line, '#' starts a comment.
  static Hamiltonian from_text(std::istream& in);
  void to_text(std::ostream& out) const;

  static Hamiltonian from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  HamiltonianSummary summarize() const;

  /// Copy with |coeff| < threshold terms removed (never applied implicitly).
  Hamiltonian pruned(double threshold) const;

 private:
  std::size_t n_ = 0;
  double identity_offset_ = 0.0;
  std::vector<HamiltonianTerm> terms_;
};

}  // namespace paulibench

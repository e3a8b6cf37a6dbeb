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

#include "paulibench/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace paulibench {

Hamiltonian::Hamiltonian(std::size_t n, std::vector<HamiltonianTerm> terms,
                         double identity_offset)
    : n_(n), identity_offset_(identity_offset) {
  if (n == 0) throw InvalidArgument("Hamiltonian needs at least one qubit");
  if (!std::isfinite(identity_offset)) {
    throw InvalidArgument("identity offset is not finite");
  }
  std::unordered_set<PauliString, PauliStringHash> seen;
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.pauli.size() != n) {
      throw InvalidArgument("term '" + t.pauli.str() + "' has length " +
                            std::to_string(t.pauli.size()) + ", expected " +
                            std::to_string(n));
    }
    if (!std::isfinite(t.coeff)) {
      throw InvalidArgument("coefficient of term '" + t.pauli.str() +
                            "' is not finite");
    }
    if (t.pauli.is_identity()) {
      identity_offset_ += t.coeff;
      continue;
    }
    if (!seen.insert(t.pauli).second) {
      throw InvalidArgument("duplicate term '" + t.pauli.str() + "'");
    }
    terms_.push_back(std::move(t));
  }
}

namespace {

Hamiltonian::Format detect_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".json" ? Hamiltonian::Format::Json : Hamiltonian::Format::Text;
}

}  // namespace

Hamiltonian Hamiltonian::load(const std::filesystem::path& path, Format format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  if (format == Format::Auto) format = detect_format(path);
  try {
    if (format == Format::Json) {
      nlohmann::json j;
      in >> j;
      return from_json(j);
    }
    return from_text(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("failed to parse '" + path.string() + "': " + e.what());
  }
}

void Hamiltonian::save(const std::filesystem::path& path, Format format) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == Format::Auto) format = detect_format(path);
  if (format == Format::Json) {
    out << to_json().dump(2) << '\n';
  } else {
    to_text(out);
  }
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Hamiltonian Hamiltonian::from_text(std::istream& in) {
  std::vector<HamiltonianTerm> terms;
  double offset = 0.0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank / comment-only line
    double coeff;
    if (!(ls >> coeff)) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": expected 'PAULI coefficient'");
    }
    std::string trailing;
    if (ls >> trailing) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": unexpected trailing token '" + trailing + "'");
    }
    PauliString pauli(word);
    if (n == 0) {
      n = pauli.size();
    } else if (pauli.size() != n) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": string length " + std::to_string(pauli.size()) +
                            " does not match earlier length " + std::to_string(n));
    }
    if (pauli.is_identity()) {
      offset += coeff;
    } else {
      terms.push_back({coeff, std::move(pauli)});
    }
  }
  if (n == 0) throw InvalidArgument("no terms found in Hamiltonian file");
  return Hamiltonian(n, std::move(terms), offset);
}

void Hamiltonian::to_text(std::ostream& out) const {
  std::ostringstream buf;
  buf.precision(17);
  buf << PauliString(n_, Pauli::I).str() << ' ' << identity_offset_ << '\n';
  for (const auto& t : terms_) {
    buf << t.pauli.str() << ' ' << t.coeff << '\n';
  }
  out << buf.str();
}

Hamiltonian Hamiltonian::from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("terms")) {
    throw InvalidArgument("Hamiltonian JSON needs fields 'n' and 'terms'");
  }
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<HamiltonianTerm> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({t.at("coeff").get<double>(),
                     PauliString(t.at("pauli").get<std::string>())});
  }
  const double offset = j.value("identity_offset", 0.0);
  return Hamiltonian(n, std::move(terms), offset);
}

nlohmann::json Hamiltonian::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    terms.push_back({{"pauli", t.pauli.str()}, {"coeff", t.coeff}});
  }
  return {{"n", n_}, {"identity_offset", identity_offset_}, {"terms", terms}};
}

HamiltonianSummary Hamiltonian::summarize() const {
  HamiltonianSummary s;
  s.term_count = terms_.size();
  for (const auto& t : terms_) {
    const int w = t.pauli.weight();
    ++s.weight_histogram[w];
    s.one_norm += std::abs(t.coeff);
    if (w > s.max_weight) s.max_weight = w;
  }
  return s;
}

nlohmann::json HamiltonianSummary::to_json() const {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [w, c] : weight_histogram) hist[std::to_string(w)] = c;
  return {{"term_count", term_count},
          {"weight_histogram", hist},
          {"one_norm", one_norm},
          {"max_weight", max_weight}};
}

Hamiltonian Hamiltonian::pruned(double threshold) const {
  std::vector<HamiltonianTerm> kept;
  for (const auto& t : terms_) {
    if (std::abs(t.coeff) >= threshold) kept.push_back(t);
  }
  return Hamiltonian(n_, std::move(kept), identity_offset_);
}

}  // namespace paulibench

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "paulibench/sampling.hpp"

using namespace paulibench;

namespace {

Hamiltonian parse_text(const std::string& text) {
  std::istringstream in(text);
  return Hamiltonian::from_text(in);
}

std::vector<PauliString> all_paulis(std::size_t n, bool full_weight) {
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

Hamiltonian random_hamiltonian(std::size_t n, std::size_t terms, Philox& rng) {
  std::size_t available = 1;
  for (std::size_t i = 0; i < n && available < 1000; ++i) available *= 4;
  terms = std::min(terms, available - 1);
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

}  // namespace

TEST_CASE("uniform distribution pmf and coverage") {
  const ProductDistribution cs = cs_distribution(2);
  for (const PauliString& b : all_paulis(2, true)) {
    CHECK(cs.pmf(MeasurementBasis(b)) == doctest::Approx(1.0 / 9));
  }
  CHECK(cs_distribution(1).pmf(MeasurementBasis("X")) == doctest::Approx(1.0 / 3));
  // Coverage of a weight-w target is 3^-w.
  CHECK(cs.coverage_probability(PauliString("XI")) == doctest::Approx(1.0 / 3));
  CHECK(cs.coverage_probability(PauliString("XZ")) == doctest::Approx(1.0 / 9));
  CHECK(cs.coverage_probability(PauliString("II")) == doctest::Approx(1.0));
}

TEST_CASE("product pmf sums to one over the query space") {
  Philox rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<LetterTriple> marginals;
    for (std::size_t q = 0; q < n; ++q) {
      double a = rng.next_double(), b = rng.next_double(), c = rng.next_double();
      const double sum = a + b + c;
      marginals.push_back({a / sum, b / sum, c / sum});
    }
    const ProductDistribution dist(marginals);
    double total = 0;
    for (const PauliString& b : all_paulis(n, true)) {
      total += dist.pmf(MeasurementBasis(b));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coverage factorizes and matches exhaustive summation") {
  Philox rng(2);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<LetterTriple> marginals;
    for (std::size_t q = 0; q < n; ++q) {
      double a = rng.next_double(), b = rng.next_double(), c = rng.next_double();
      const double sum = a + b + c;
      marginals.push_back({a / sum, b / sum, c / sum});
    }
    const ProductDistribution dist(marginals);
    for (const PauliString& q : all_paulis(n, false)) {
      double exhaustive = 0;
      for (const PauliString& b : all_paulis(n, true)) {
        if (covers(q, b)) exhaustive += dist.pmf(MeasurementBasis(b));
      }
      CHECK(dist.coverage_probability(q) ==
            doctest::Approx(exhaustive).epsilon(1e-12));
    }
  }
}

TEST_CASE("diagonal cost closed form matches the one-shot variance of the "
          "weighted estimator under the maximally mixed state") {
  // Oracle: draw B ~ beta and y uniform over bit strings (the maximally mixed
  // state gives uniform outcomes in every basis). The single-shot weighted
  // estimate is E_hat = sum_j a_j 1{Q_j covered} mu(B, supp Q_j) / xi_j. Its
  // mean is 0 and its variance is E[E_hat^2], computed by full enumeration.
  Philox rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const Hamiltonian h = random_hamiltonian(n, 2 + trial % 3, rng);
    std::vector<LetterTriple> marginals;
    for (std::size_t q = 0; q < n; ++q) {
      double a = 1 + rng.uniform_index(4), b = 1 + rng.uniform_index(4),
             c = 1 + rng.uniform_index(4);
      const double sum = a + b + c;
      marginals.push_back({a / sum, b / sum, c / sum});
    }
    const ProductDistribution dist(marginals);

    double second_moment = 0;
    for (const PauliString& bp : all_paulis(n, true)) {
      const MeasurementBasis basis(bp);
      const double pb = dist.pmf(basis);
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
        const Outcome outcome = Outcome::from_index(n, y);
        double estimate = 0;
        for (const auto& term : h.terms()) {
          if (!covers(term.pauli, bp)) continue;
          const auto support = term.pauli.support();
          estimate += term.coeff *
                      eigenvalue_product(outcome,
                                         std::span<const std::size_t>(support)) /
                      dist.coverage_probability(term.pauli);
        }
        second_moment += pb / static_cast<double>(std::uint64_t{1} << n) *
                         estimate * estimate;
      }
    }
    CHECK(diagonal_cost(h, dist) == doctest::Approx(second_moment).epsilon(1e-10));
  }
}

TEST_CASE("diagonal cost examples") {
  // Uniform sampling, one weight-w term: cost = coeff^2 * 3^w.
  const ProductDistribution cs3 = cs_distribution(3);
  CHECK(diagonal_cost(parse_text("XYZ 2.0\n"), cs3) == doctest::Approx(4.0 * 27));
  CHECK(diagonal_cost(parse_text("XII 2.0\n"), cs3) == doctest::Approx(4.0 * 3));

  const ProductDistribution all_z(
      std::vector<LetterTriple>{LetterTriple{0, 0, 1}});
  CHECK(diagonal_cost(parse_text("Z 2.0\n"), all_z) == doctest::Approx(4.0));
  const auto flagged = diagonal_cost_detail(parse_text("X 1.0\n"), all_z);
  CHECK(flagged.flagged());
  CHECK(std::isinf(flagged.value));
  CHECK(flagged.uncovered_terms == std::vector<std::size_t>{0});
}

TEST_CASE("diagonal cost is invariant under term permutation") {
  const Hamiltonian a = parse_text("XX 1.0\nZZ 0.5\nYI -0.25\n");
  const Hamiltonian b = parse_text("YI -0.25\nXX 1.0\nZZ 0.5\n");
  const ProductDistribution cs = cs_distribution(2);
  CHECK(diagonal_cost(a, cs) == doctest::Approx(diagonal_cost(b, cs)).epsilon(1e-15));
}

TEST_CASE("lbcs optimization on hand-checkable instances") {
  {
    const ProductDistribution beta = lbcs_optimize(parse_text("ZZ 0.7\n"));
    CHECK(beta.marginals()[0][2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(beta.marginals()[1][2] == doctest::Approx(1.0).epsilon(1e-6));
  }
  {
    const Hamiltonian h = parse_text("XX 1.0\nZZ 1.0\n");
    const ProductDistribution beta = lbcs_optimize(h);
    for (std::size_t q = 0; q < 2; ++q) {
      CHECK(beta.marginals()[q][0] == doctest::Approx(0.5).epsilon(1e-4));
      CHECK(beta.marginals()[q][1] == doctest::Approx(0.0).epsilon(1e-4));
      CHECK(beta.marginals()[q][2] == doctest::Approx(0.5).epsilon(1e-4));
    }
    CHECK(diagonal_cost(h, beta) == doctest::Approx(8.0).epsilon(1e-8));
  }
  {
    const Hamiltonian h = parse_text("X 1.5\n");
    const ProductDistribution beta = lbcs_optimize(h);
    CHECK(beta.marginals()[0][0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(diagonal_cost(h, beta) == doctest::Approx(1.5 * 1.5).epsilon(1e-8));
  }
  CHECK_THROWS_AS(lbcs_optimize(parse_text("II 1.0\n")), InvalidArgument);
}

TEST_CASE("lbcs never does worse than uniform sampling") {
  Philox rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(4);
    const Hamiltonian h = random_hamiltonian(n, 1 + rng.uniform_index(6), rng);
    const double uniform_cost = diagonal_cost(h, cs_distribution(n));
    const double optimized_cost = diagonal_cost(h, lbcs_optimize(h));
    CHECK(optimized_cost <= uniform_cost + 1e-9);
  }
}

TEST_CASE("adaptive marginal closed form") {
  const LetterTriple m = adaptive_marginal({4.0, 0.0, 1.0});
  CHECK(m[0] == doctest::Approx(2.0 / 3));
  CHECK(m[1] == doctest::Approx(0.0));
  CHECK(m[2] == doctest::Approx(1.0 / 3));

  const LetterTriple uniform = adaptive_marginal({0.0, 0.0, 0.0});
  CHECK(uniform[0] == doctest::Approx(1.0 / 3));
  CHECK(uniform[1] == doctest::Approx(1.0 / 3));
  CHECK(uniform[2] == doctest::Approx(1.0 / 3));
}

TEST_CASE("adaptive marginal beats a fine grid search of the objective") {
  // Objective: sum_P c_P / beta_P over the 2-simplex.
  Philox rng(5);
  auto objective = [](const LetterTriple& c, const LetterTriple& beta) {
    double v = 0;
    for (int l = 0; l < 3; ++l) {
      if (c[l] == 0) continue;
      if (beta[l] <= 0) return std::numeric_limits<double>::infinity();
      v += c[l] / beta[l];
    }
    return v;
  };
  for (int trial = 0; trial < 20; ++trial) {
    LetterTriple c{rng.next_double() * 4, rng.next_double() * 4,
                   rng.next_double() * 4};
    if (trial % 4 == 0) c[rng.uniform_index(3)] = 0;
    const LetterTriple closed = adaptive_marginal(c);
    double best = std::numeric_limits<double>::infinity();
    const int grid = 1000;
    for (int i = 0; i <= grid; ++i) {
      for (int k = 0; k <= grid - i; ++k) {
        const LetterTriple beta{static_cast<double>(i) / grid,
                                static_cast<double>(k) / grid,
                                static_cast<double>(grid - i - k) / grid};
        best = std::min(best, objective(c, beta));
      }
    }
    CHECK(objective(c, closed) <= best + 1e-3);
  }
}

TEST_CASE("adaptive sampler behaviour") {
  {
    // A single all-weight target forces its own basis.
    const AdaptiveSampler aps(parse_text("ZZ 1.0\n"));
    Philox rng(6);
    for (int s = 0; s < 50; ++s) {
      CHECK(aps.sample(rng).str() == "ZZ");
    }
  }
  {
    // No targets at all is rejected.
    CHECK_THROWS_AS(AdaptiveSampler(parse_text("II 1.0\n")), InvalidArgument);
  }
  {
    // Once no compatible target remains, letters fall back to uniform; with
    // target XI the second qubit is unconstrained and gets all three letters.
    const AdaptiveSampler aps(parse_text("XI 1.0\n"));
    Philox rng(7);
    std::map<char, int> second_letter;
    for (int s = 0; s < 3000; ++s) {
      ++second_letter[aps.sample(rng).str()[1]];
    }
    CHECK(second_letter['X'] > 800);
    CHECK(second_letter['Y'] > 800);
    CHECK(second_letter['Z'] > 800);
  }
}

TEST_CASE("basis sampling frequencies match the distribution") {
  {
    // Uniform sampling on 3 qubits: every basis within 3 sigma of 1/27.
    const ProductDistribution cs = cs_distribution(3);
    Philox rng(8);
    std::map<std::string, int> counts;
    const int draws = 90000;
    for (int s = 0; s < draws; ++s) ++counts[cs.sample(rng).str()];
    CHECK(counts.size() == 27);
    const double expected = draws / 27.0;
    const double sigma = std::sqrt(expected * (1 - 1.0 / 27));
    for (const auto& [basis, count] : counts) {
      CHECK(std::abs(count - expected) < 3.5 * sigma);
    }
  }
  {
    // Degenerate marginals always give the same basis.
    const ProductDistribution z2(
        std::vector<LetterTriple>(2, LetterTriple{0, 0, 1}));
    Philox rng(9);
    for (int s = 0; s < 20; ++s) CHECK(z2.sample(rng).str() == "ZZ");
  }
  {
    // Optimized marginals for XX+ZZ empirically match (1/2, 0, 1/2).
    const ProductDistribution beta = lbcs_optimize(parse_text("XX 1.0\nZZ 1.0\n"));
    Philox rng(10);
    int x0 = 0, y0 = 0;
    const int draws = 40000;
    for (int s = 0; s < draws; ++s) {
      const auto b = beta.sample(rng);
      x0 += b.letter(0) == Pauli::X;
      y0 += b.letter(0) == Pauli::Y;
    }
    const double sigma = std::sqrt(draws * 0.25);
    CHECK(std::abs(x0 - draws / 2.0) < 3.5 * sigma);
    CHECK(y0 < draws / 100);
  }
}

TEST_CASE("product distribution json round trip") {
  const ProductDistribution beta = lbcs_optimize(parse_text("XY 1.0\nZI 0.5\n"));
  const ProductDistribution back = ProductDistribution::from_json(beta.to_json());
  for (std::size_t q = 0; q < 2; ++q) {
    for (int l = 0; l < 3; ++l) {
      CHECK(back.marginals()[q][l] == beta.marginals()[q][l]);
    }
  }
}

TEST_CASE("suffix coverage validates its arguments") {
  const ProductDistribution cs = cs_distribution(2);
  const std::vector<Pauli> too_long{Pauli::X, Pauli::Y, Pauli::Z};
  CHECK_THROWS_AS(cs.suffix_coverage(too_long, PauliString("XI")),
                  InvalidArgument);
  const std::vector<Pauli> one{Pauli::X};
  CHECK(cs.suffix_coverage(one, PauliString("XZ")) == doctest::Approx(1.0 / 3));
  CHECK(cs.suffix_coverage(one, PauliString("XI")) == doctest::Approx(1.0));
}

TEST_CASE("invalid marginals are rejected") {
  CHECK_THROWS_AS(
      ProductDistribution(std::vector<LetterTriple>{LetterTriple{0.5, 0.2, 0.2}}),
      InvalidArgument);
  CHECK_THROWS_AS(
      ProductDistribution(std::vector<LetterTriple>{LetterTriple{-0.1, 0.6, 0.5}}),
      InvalidArgument);
}

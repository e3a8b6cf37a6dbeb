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

#include <algorithm>

#include "paulibench/estimators.hpp"
#include "paulibench/state.hpp"
#include "test_support.hpp"

using namespace paulibench;
namespace ts = paulibench::test_support;

namespace {

std::vector<PauliString> targets_from(const std::vector<std::string>& texts) {
  std::vector<PauliString> out;
  for (const auto& t : texts) out.emplace_back(t);
  return out;
}

}  // namespace

TEST_CASE("ingest updates every covered target with the right sign") {
  {
    const auto targets = targets_from({"XXI", "ZZI"});
    RecordIngestor ing(targets, 3);
    ing.add(MeasurementBasis("XXX"), Outcome::from_string("000"));
    CHECK(ing.tallies().m0(0) == 1);
    CHECK(ing.tallies().m1(0) == 0);
    CHECK(ing.tallies().hits(1) == 0);
    CHECK(ing.tallies().total_shots() == 1);
  }
  {
    const auto targets = targets_from({"ZI", "IZ"});
    RecordIngestor ing(targets, 2);
    ing.add(MeasurementBasis("ZZ"), Outcome::from_string("01"));
    CHECK(ing.tallies().m0(0) == 1);  // qubit 0 reads 0 -> +1
    CHECK(ing.tallies().m1(1) == 1);  // qubit 1 reads 1 -> -1
  }
  {
    const auto targets = targets_from({"XX"});
    RecordIngestor ing(targets, 2);
    CHECK(ing.tallies().hits(0) == 0);
    CHECK(ing.tallies().total_shots() == 0);
    CHECK_THROWS_AS(ing.add(MeasurementBasis("XXX"), Outcome::from_string("000")),
                    InvalidArgument);
  }
}

TEST_CASE("ingest order does not matter and merge equals sequential") {
  Philox rng(5);
  const Hamiltonian h = ts::random_hamiltonian(3, 6, rng);
  std::vector<PauliString> targets;
  for (const auto& t : h.terms()) targets.push_back(t.pauli);

  const auto bases = ts::all_paulis(3, true);
  std::vector<std::pair<MeasurementBasis, Outcome>> records;
  for (int s = 0; s < 200; ++s) {
    records.emplace_back(MeasurementBasis(bases[rng.uniform_index(bases.size())]),
                         Outcome::from_index(3, rng.uniform_index(8)));
  }

  RecordIngestor sequential(targets, 3);
  for (const auto& [b, y] : records) sequential.add(b, y);

  // Permuted.
  RecordIngestor permuted(targets, 3);
  auto shuffled = records;
  rng.shuffle(std::span<std::pair<MeasurementBasis, Outcome>>(shuffled));
  for (const auto& [b, y] : shuffled) permuted.add(b, y);
  CHECK(permuted.tallies() == sequential.tallies());

  // Split into independently accumulated halves, then merged.
  RecordIngestor first(targets, 3), second(targets, 3);
  for (std::size_t s = 0; s < records.size(); ++s) {
    (s < records.size() / 2 ? first : second).add(records[s].first,
                                                  records[s].second);
  }
  TallySet merged = first.tallies();
  merged.merge(second.tallies());
  CHECK(merged == sequential.tallies());

  // add_index agrees with add.
  RecordIngestor indexed(targets, 3);
  for (const auto& [b, y] : records) indexed.add_index(b, y.to_index());
  CHECK(indexed.tallies() == sequential.tallies());
}

TEST_CASE("plain estimator values") {
  TallySet t(3);
  // Target 0: m0=3, m1=1. Target 1: none. Target 2: m0=1.
  for (int i = 0; i < 3; ++i) t.add(0, +1);
  t.add(0, -1);
  t.add(2, +1);

  const auto gamma0 = mc_estimates(t, 0.0);
  CHECK(gamma0[0] == doctest::Approx(0.5));
  CHECK(gamma0[1] == 0.0);  // zero hits stays zero
  CHECK(gamma0[2] == doctest::Approx(1.0));

  const auto jeffreys = mc_estimates(t, 0.5);
  CHECK(jeffreys[2] == doctest::Approx(0.5));  // 1/(1+1)

  const auto laplace = mc_estimates(t, 1.0);
  CHECK(laplace[0] == doctest::Approx(2.0 / 6));

  TallySet empty(1);
  CHECK(mc_estimates(empty, 1.0)[0] == 0.0);
  CHECK_THROWS_AS(mc_estimates(t, -0.1), InvalidArgument);
}

TEST_CASE("weighted estimator uses stated coverage, not empirical hits") {
  // Uniform sampling on 2 qubits, target XI with coverage 1/3; three shots,
  // one covering with +1.
  const auto targets = targets_from({"XI"});
  RecordIngestor ing(targets, 2);
  ing.add(MeasurementBasis("XZ"), Outcome::from_string("00"));
  ing.add(MeasurementBasis("ZZ"), Outcome::from_string("00"));
  ing.add(MeasurementBasis("YY"), Outcome::from_string("00"));
  const double coverage[] = {1.0 / 3};
  const auto omega = wmc_estimates(ing.tallies(), coverage);
  CHECK(omega[0] == doctest::Approx(1.0));

  // Perfect coverage with cancelling outcomes.
  TallySet t(1);
  for (int s = 0; s < 4; ++s) {
    t.add(0, s % 2 == 0 ? +1 : -1);
    t.add_shot();
  }
  const double full[] = {1.0};
  CHECK(wmc_estimates(t, full)[0] == 0.0);

  // No covering record: zero.
  TallySet none(1);
  none.add_shot();
  CHECK(wmc_estimates(none, full)[0] == 0.0);

  // A covering record with stated zero coverage is an internal inconsistency.
  TallySet bad(1);
  bad.add(0, +1);
  bad.add_shot();
  const double zero[] = {0.0};
  CHECK_THROWS_AS(wmc_estimates(bad, zero), InternalError);
}

TEST_CASE("posterior estimates and the smoothing identity") {
  TallySet t(2);
  t.add(1, +1);
  t.add(1, +1);
  const auto est = bayes_estimates(t);
  CHECK(est[0].mean == 0.0);
  CHECK(est[0].variance == doctest::Approx(2.0 / 3));
  CHECK(est[1].mean == doctest::Approx(0.5));

  Philox rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    TallySet random_tally(1);
    const int m0 = static_cast<int>(rng.uniform_index(40));
    const int m1 = static_cast<int>(rng.uniform_index(40));
    for (int i = 0; i < m0; ++i) random_tally.add(0, +1);
    for (int i = 0; i < m1; ++i) random_tally.add(0, -1);
    const auto bayesian = bayes_estimates(random_tally);
    const auto smoothed = mc_estimates(random_tally, 1.0);
    CHECK(bayesian[0].mean == smoothed[0]);  // exact identity
    CHECK(bayesian[0].variance ==
          4.0 * (m0 + 1.0) * (m1 + 1.0) / ((m0 + m1 + 2.0) * (m0 + m1 + 3.0)));
  }
}

TEST_CASE("energy assembly") {
  const Hamiltonian h = ts::parse_hamiltonian("Z 0.5\nI 2.0\n");
  {
    const double omega[] = {0.0};
    CHECK(energy(h, omega, 0).value == doctest::Approx(2.0));
  }
  {
    const double omega[] = {1.0};
    CHECK(energy(h, omega, 5).value == doctest::Approx(2.5));
  }
  {
    const double misaligned[] = {1.0, 0.0};
    CHECK_THROWS_AS(energy(h, misaligned, 0), InvalidArgument);
  }
  // Linearity under scaling of all coefficients and the offset.
  const Hamiltonian scaled = ts::parse_hamiltonian("Z 1.5\nI 6.0\n");
  const double omega[] = {0.25};
  CHECK(energy(scaled, omega, 0).value ==
        doctest::Approx(3.0 * energy(h, omega, 0).value));
}

TEST_CASE("streaming estimator matches batch formulas") {
  Philox rng(11);
  const Hamiltonian h = ts::random_hamiltonian(2, 5, rng);
  const ProductDistribution cs = cs_distribution(2);

  Estimator mc(h, {EstimatorKind::Mc, 0.5});
  Estimator wmc(h, {EstimatorKind::Wmc, 0.0}, &cs);
  Estimator bayes(h, {EstimatorKind::Bayes, 0.0});

  Philox basis_rng(1, 1), sim_rng(1, 2);
  const QuantumState state = QuantumState::zero_state(2);
  for (int s = 0; s < 500; ++s) {
    const MeasurementBasis b = cs.sample(basis_rng);
    const Outcome y = sample_outcome(state, b, sim_rng);
    mc.add(b, y);
    wmc.add(b, y);
    bayes.add(b, y);
  }

  const TallySet& t = mc.tallies();
  CHECK(mc.estimate().value ==
        doctest::Approx(energy(h, mc_estimates(t, 0.5), 500).value));
  std::vector<double> coverage;
  for (const auto& term : h.terms()) {
    coverage.push_back(cs.coverage_probability(term.pauli));
  }
  CHECK(wmc.estimate().value ==
        doctest::Approx(energy(h, wmc_estimates(t, coverage), 500).value));
  const auto b_est = bayes.estimate();
  CHECK(b_est.variance_proxy.has_value());
  CHECK(b_est.shots == 500);

  // The weighted estimator demands a distribution with coverage.
  CHECK_THROWS_AS(Estimator(h, {EstimatorKind::Wmc, 0.0}, nullptr), ConfigError);
}

TEST_CASE("plain and posterior estimates converge at rate 1/hits") {
  // Per target, |mc(0) - bayes| = 2|m0 - m1| / (h (h + 2)) <= 2/(h + 2).
  Philox rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    TallySet t(1);
    const int h = 1 + static_cast<int>(rng.uniform_index(1000));
    const int m0 = static_cast<int>(rng.uniform_index(h + 1));
    for (int i = 0; i < m0; ++i) t.add(0, +1);
    for (int i = 0; i < h - m0; ++i) t.add(0, -1);
    const double gap =
        std::abs(mc_estimates(t, 0.0)[0] - bayes_estimates(t)[0].mean);
    const double exact =
        2.0 * std::abs(2.0 * m0 - h) / (static_cast<double>(h) * (h + 2.0));
    CHECK(gap == doctest::Approx(exact).epsilon(1e-12));
    CHECK(gap <= 2.0 / (h + 2.0) + 1e-15);
  }
}

TEST_CASE("estimator config parsing") {
  CHECK(EstimatorConfig::parse("mc", 0.5).kind == EstimatorKind::Mc);
  CHECK(EstimatorConfig::parse("bayesian", 0).kind == EstimatorKind::Bayes);
  CHECK_THROWS_AS(EstimatorConfig::parse("magic", 0), ConfigError);
  CHECK_THROWS_AS(EstimatorConfig::parse("mc", -1), ConfigError);
}

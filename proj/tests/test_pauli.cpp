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
#include <cmath>

#include "paulibench/pauli.hpp"
#include "paulibench/rng.hpp"

using namespace paulibench;

namespace {

PauliString random_pauli(std::size_t n, Philox& rng) {
  PauliString p(n, Pauli::I);
  for (std::size_t i = 0; i < n; ++i) {
    p.set_letter(i, static_cast<Pauli>(rng.uniform_index(4)));
  }
  return p;
}

// All strings over {I,X,Y,Z} (resp. {X,Y,Z} when full_weight) of length n.
std::vector<PauliString> all_strings(std::size_t n, bool full_weight) {
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

}  // namespace

TEST_CASE("text round trip and letter access") {
  PauliString p("XXIZ");
  CHECK(p.size() == 4);
  CHECK(p.letter(0) == Pauli::X);
  CHECK(p.letter(2) == Pauli::I);
  CHECK(p.letter(3) == Pauli::Z);
  CHECK(p.str() == "XXIZ");
  CHECK_THROWS_AS(PauliString("XQ"), InvalidArgument);
  CHECK_THROWS_AS(PauliString(""), InvalidArgument);

  Philox rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(90);
    const PauliString q = random_pauli(n, rng);
    CHECK(PauliString(q.str()) == q);
  }
}

TEST_CASE("covering relation") {
  CHECK(covers(PauliString("XXI"), PauliString("XXX")));
  CHECK(covers(PauliString("IXX"), PauliString("XXX")));
  CHECK(covers(PauliString("XIX"), PauliString("XXX")));
  CHECK_FALSE(covers(PauliString("ZZI"), PauliString("XXX")));
  CHECK_FALSE(covers(PauliString("IZZ"), PauliString("XXX")));
  CHECK_FALSE(covers(PauliString("ZIZ"), PauliString("XXX")));
  CHECK(covers(PauliString("III"), PauliString("YZX")));
  CHECK_THROWS_AS(covers(PauliString("XX"), PauliString("XXX")), InvalidArgument);
}

TEST_CASE("covering is reflexive on full-weight strings") {
  for (const PauliString& b : all_strings(3, true)) CHECK(covers(b, b));
}

TEST_CASE("covering is monotone under erasing letters") {
  Philox rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(40);
    PauliString q = random_pauli(n, rng);
    PauliString b(n, Pauli::I);
    for (std::size_t i = 0; i < n; ++i) {
      b.set_letter(i, static_cast<Pauli>(1 + rng.uniform_index(3)));
    }
    if (!covers(q, b)) continue;
    PauliString erased = q;
    erased.set_letter(rng.uniform_index(n), Pauli::I);
    CHECK(covers(erased, b));
  }
}

TEST_CASE("weight and support") {
  CHECK(PauliString("XIZ").weight() == 2);
  CHECK(PauliString("IIII").weight() == 0);
  CHECK(PauliString("XYZ").weight() == 3);
  CHECK(PauliString("XIZ").support() == std::vector<std::size_t>{0, 2});
  // Long strings exercise the multi-word path.
  PauliString longstr(100, Pauli::I);
  longstr.set_letter(0, Pauli::X);
  longstr.set_letter(65, Pauli::Y);
  longstr.set_letter(99, Pauli::Z);
  CHECK(longstr.weight() == 3);
  CHECK(longstr.support() == std::vector<std::size_t>{0, 65, 99});
  const auto mask = longstr.support_mask();
  REQUIRE(mask.size() == 2);
  CHECK(mask[0] == 1ull);
  CHECK(mask[1] == ((1ull << 1) | (1ull << 35)));
}

TEST_CASE("fraction of covering bases is exactly 3^(n-wt) / 3^n") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto bases = all_strings(n, true);
    for (const PauliString& q : all_strings(n, false)) {
      std::size_t covering = 0;
      for (const PauliString& b : bases) {
        if (covers(q, b)) ++covering;
      }
      std::size_t expected = 1;
      for (int i = 0; i < static_cast<int>(n) - q.weight(); ++i) expected *= 3;
      CHECK(covering == expected);
    }
  }
}

TEST_CASE("eigenvalue products") {
  const Outcome y010 = Outcome::from_string("010");
  const std::size_t one[] = {1};
  CHECK(eigenvalue_product(y010, std::span<const std::size_t>(one)) == -1);

  const Outcome y110 = Outcome::from_string("110");
  CHECK(eigenvalue_product(y110, std::span<const std::size_t>{}) == +1);
  const std::size_t both[] = {0, 1};
  CHECK(eigenvalue_product(y110, std::span<const std::size_t>(both)) == +1);

  const std::size_t bad[] = {5};
  CHECK_THROWS_AS(eigenvalue_product(y010, std::span<const std::size_t>(bad)),
                  InvalidArgument);
}

TEST_CASE("eigenvalue product multiplies over disjoint subsets") {
  Philox rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(60);
    Outcome y(n);
    for (std::size_t i = 0; i < n; ++i) y.set_bit(i, rng.uniform_index(2) == 1);
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      switch (rng.uniform_index(3)) {
        case 0: a.push_back(i); break;
        case 1: b.push_back(i); break;
        default: break;
      }
    }
    std::vector<std::size_t> joint = a;
    joint.insert(joint.end(), b.begin(), b.end());
    CHECK(eigenvalue_product(y, std::span<const std::size_t>(joint)) ==
          eigenvalue_product(y, std::span<const std::size_t>(a)) *
              eigenvalue_product(y, std::span<const std::size_t>(b)));
  }
}

TEST_CASE("mask-based eigenvalue product agrees with the index form") {
  Philox rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(90);
    const PauliString q = random_pauli(n, rng);
    Outcome y(n);
    for (std::size_t i = 0; i < n; ++i) y.set_bit(i, rng.uniform_index(2) == 1);
    const auto support = q.support();
    const auto mask = q.support_mask();
    CHECK(eigenvalue_product(y, std::span<const std::size_t>(support)) ==
          eigenvalue_product_masked(y, std::span<const std::uint64_t>(mask)));
  }
}

TEST_CASE("ordering is lexicographic with I < X < Y < Z") {
  std::vector<PauliString> v{PauliString("ZI"), PauliString("IZ"), PauliString("XY"),
                             PauliString("XX"), PauliString("II")};
  std::sort(v.begin(), v.end());
  CHECK(v[0].str() == "II");
  CHECK(v[1].str() == "IZ");
  CHECK(v[2].str() == "XX");
  CHECK(v[3].str() == "XY");
  CHECK(v[4].str() == "ZI");
}

TEST_CASE("measurement basis rejects identities") {
  CHECK_THROWS_AS(MeasurementBasis("XIZ"), InvalidArgument);
  CHECK(MeasurementBasis("XYZ").letter(1) == Pauli::Y);
}

TEST_CASE("outcome index round trip") {
  const Outcome y = Outcome::from_index(4, 0b1010);
  CHECK(y.bit(0) == false);
  CHECK(y.bit(1) == true);
  CHECK(y.bit(3) == true);
  CHECK(y.str() == "0101");
  CHECK(Outcome::from_string(y.str()) == y);
  CHECK(y.to_index() == 0b1010);
}

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

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "paulibench/hamiltonian.hpp"
#include "paulibench/pauli.hpp"
#include "paulibench/rng.hpp"

namespace paulibench {

using Complex = std::complex<double>;

/// Dense n-qubit pure state. Amplitude index convention: bit j of the index
/// is qubit j, so |q0 q1 ... q_{n-1}> sits at index sum_j q_j 2^j, matching
/// the outcome bit order (bit j of an Outcome is qubit j).
class QuantumState {
 public:
  QuantumState(std::size_t n, std::vector<Complex> amplitudes);

  static QuantumState zero_state(std::size_t n);
  static QuantumState basis_state(std::size_t n, const Outcome& bits);

  std::size_t num_qubits() const { return n_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::size_t dim() const { return amps_.size(); }

 private:
  std::size_t n_ = 0;
  std::vector<Complex> amps_;
};

/// Layered random-parameter circuit: per layer, RY and RZ rotations on every
/// qubit followed by CZ on the listed qubit pairs (nearest-neighbour chain by
/// default). Angles are drawn uniformly from [0, 2pi) using the seed, so the
/// state is a pure function of the spec.
struct AnsatzSpec {
  std::size_t n = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::size_t, std::size_t>> entanglers;  // empty = linear chain

  nlohmann::json to_json() const;
  static AnsatzSpec from_json(const nlohmann::json& j);
};

QuantumState random_ansatz_state(const AnsatzSpec& spec);

struct GroundStateOptions {
  std::size_t dense_cutoff = 12;  // dense eigensolver up to this many qubits
  std::size_t max_qubits = 16;    // hard cap for dense simulation
};

/// Minimal eigenpair of the Hamiltonian (eigenvalue includes the identity
/// offset). Dense Hermitian eigendecomposition for small n, Lanczos with full
/// reorthogonalization above the dense cutoff.
std::pair<QuantumState, double> ground_state(const Hamiltonian& h,
                                             const GroundStateOptions& opts = {});

/// out += coeff * (pauli acting on in). Buffers must not alias.
void add_pauli_apply(const PauliString& pauli, double coeff,
                     std::span<const Complex> in, std::span<Complex> out);

/// <state| pauli |state>, exact.
double pauli_expectation(const QuantumState& state, const PauliString& pauli);

/// Exact Tr(rho H) for the pure state, term by term, no sampling.
double exact_expectation(const Hamiltonian& h, const QuantumState& state);

/// Exact Born probabilities of measuring `state` in `basis`: entry k is the
/// probability of the outcome with bit pattern k.
std::vector<double> outcome_distribution(const QuantumState& state,
                                         const MeasurementBasis& basis);

/// One computational-basis shot of the basis-rotated state.
Outcome sample_outcome(const QuantumState& state, const MeasurementBasis& basis,
                       Philox& rng);

/// Precomputed cumulative distribution for drawing many shots in one basis.
class BasisOutcomeSampler {
 public:
  BasisOutcomeSampler(const QuantumState& state, const MeasurementBasis& basis);

  std::uint64_t sample_index(Philox& rng) const;
  Outcome sample(Philox& rng) const;
  std::size_t num_qubits() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> cumulative_;
};

}  // namespace paulibench

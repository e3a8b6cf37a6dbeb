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

#include "paulibench/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace paulibench {

namespace {

constexpr double kNormTolerance = 1e-10;

struct PauliMasks {
  std::uint64_t x_mask = 0;   // letters in {X, Y}: bit flips
  std::uint64_t zy_mask = 0;  // letters in {Y, Z}: sign depends on source bit
  Complex y_phase = 1.0;      // i^{#Y}
};

PauliMasks masks_for(const PauliString& p) {
  PauliMasks m;
  int y_count = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    switch (p.letter(q)) {
      case Pauli::I:
        break;
      case Pauli::X:
        m.x_mask |= std::uint64_t{1} << q;
        break;
      case Pauli::Y:
        m.x_mask |= std::uint64_t{1} << q;
        m.zy_mask |= std::uint64_t{1} << q;
        ++y_count;
        break;
      case Pauli::Z:
        m.zy_mask |= std::uint64_t{1} << q;
        break;
    }
  }
  constexpr Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.y_phase = i_powers[y_count % 4];
  return m;
}

void check_qubit_count(std::size_t n) {
  if (n == 0 || n > 30) {
    throw InvalidArgument("statevector simulation supports 1..30 qubits, got " +
                          std::to_string(n));
  }
}

void apply_1q(std::vector<Complex>& amps, std::size_t qubit, const Complex u[2][2]) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amps[k];
      const Complex a1 = amps[k + stride];
      amps[k] = u[0][0] * a0 + u[0][1] * a1;
      amps[k + stride] = u[1][0] * a0 + u[1][1] * a1;
    }
  }
}

void apply_cz(std::vector<Complex>& amps, std::size_t a, std::size_t b) {
  const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if ((k & mask) == mask) amps[k] = -amps[k];
  }
}

/// Rotated copy of the state: per qubit, Z keeps the frame, X applies H, and
/// Y applies S-dagger then H, so that an outcome bit y gives the eigenvalue
/// (-1)^y of the measured letter.
std::vector<Complex> rotate_to_basis(const QuantumState& state,
                                     const MeasurementBasis& basis) {
  if (state.num_qubits() != basis.size()) {
    throw InvalidArgument("state has " + std::to_string(state.num_qubits()) +
                          " qubits but basis has " + std::to_string(basis.size()));
  }
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  const double s = 1.0 / std::numbers::sqrt2;
  const Complex had[2][2] = {{s, s}, {s, -s}};
  const Complex had_sdg[2][2] = {{s, Complex(0, -s)}, {s, Complex(0, s)}};
  for (std::size_t q = 0; q < basis.size(); ++q) {
    switch (basis.letter(q)) {
      case Pauli::X:
        apply_1q(amps, q, had);
        break;
      case Pauli::Y:
        apply_1q(amps, q, had_sdg);
        break;
      default:
        break;  // Z: computational frame already
    }
  }
  return amps;
}

}  // namespace

QuantumState::QuantumState(std::size_t n, std::vector<Complex> amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
  check_qubit_count(n);
  if (amps_.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("amplitude vector has dimension " +
                          std::to_string(amps_.size()) + ", expected 2^" +
                          std::to_string(n));
  }
  double norm2 = 0;
  for (const Complex& a : amps_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("state is not normalized (|amplitudes|^2 = " +
                          std::to_string(norm2) + ")");
  }
}

QuantumState QuantumState::zero_state(std::size_t n) {
  check_qubit_count(n);
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0, 0});
  amps[0] = 1.0;
  return QuantumState(n, std::move(amps));
}

QuantumState QuantumState::basis_state(std::size_t n, const Outcome& bits) {
  check_qubit_count(n);
  if (bits.size() != n) throw InvalidArgument("basis state bit count mismatch");
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0, 0});
  amps[bits.to_index()] = 1.0;
  return QuantumState(n, std::move(amps));
}

nlohmann::json AnsatzSpec::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : entanglers) pairs.push_back({a, b});
  return {{"n", n}, {"depth", depth}, {"seed", seed}, {"entanglers", pairs}};
}

AnsatzSpec AnsatzSpec::from_json(const nlohmann::json& j) {
  AnsatzSpec spec;
  spec.n = j.at("n").get<std::size_t>();
  spec.depth = j.value("depth", std::size_t{0});
  spec.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("entanglers")) {
    for (const auto& p : j.at("entanglers")) {
      spec.entanglers.emplace_back(p.at(0).get<std::size_t>(),
                                   p.at(1).get<std::size_t>());
    }
  }
  return spec;
}

QuantumState random_ansatz_state(const AnsatzSpec& spec) {
  check_qubit_count(spec.n);
  auto pairs = spec.entanglers;
  if (pairs.empty()) {
    for (std::size_t q = 0; q + 1 < spec.n; ++q) pairs.emplace_back(q, q + 1);
  }
  for (const auto& [a, b] : pairs) {
    if (a >= spec.n || b >= spec.n || a == b) {
      throw InvalidArgument("entangler pair references invalid qubits");
    }
  }
  std::vector<Complex> amps(std::size_t{1} << spec.n, Complex{0, 0});
  amps[0] = 1.0;
  Philox rng(spec.seed);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    for (std::size_t q = 0; q < spec.n; ++q) {
      const double theta = two_pi * rng.next_double();
      const double phi = two_pi * rng.next_double();
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      const Complex ry[2][2] = {{c, -s}, {s, c}};
      apply_1q(amps, q, ry);
      const Complex rz[2][2] = {{std::polar(1.0, -phi / 2), 0.0},
                                {0.0, std::polar(1.0, phi / 2)}};
      apply_1q(amps, q, rz);
    }
    for (const auto& [a, b] : pairs) apply_cz(amps, a, b);
  }
  return QuantumState(spec.n, std::move(amps));
}

void add_pauli_apply(const PauliString& pauli, double coeff,
                     std::span<const Complex> in, std::span<Complex> out) {
  const PauliMasks m = masks_for(pauli);
  const Complex base = coeff * m.y_phase;
  for (std::size_t c = 0; c < in.size(); ++c) {
    const double sign = (std::popcount(c & m.zy_mask) & 1) ? -1.0 : 1.0;
    out[c ^ m.x_mask] += base * sign * in[c];
  }
}

double pauli_expectation(const QuantumState& state, const PauliString& pauli) {
  if (pauli.size() != state.num_qubits()) {
    throw InvalidArgument("pauli_expectation: dimension mismatch");
  }
  const PauliMasks m = masks_for(pauli);
  const auto amps = state.amplitudes();
  Complex acc = 0;
  for (std::size_t c = 0; c < amps.size(); ++c) {
    const double sign = (std::popcount(c & m.zy_mask) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[c ^ m.x_mask]) * (m.y_phase * sign) * amps[c];
  }
  return acc.real();
}

double exact_expectation(const Hamiltonian& h, const QuantumState& state) {
  if (h.num_qubits() != state.num_qubits()) {
    throw InvalidArgument("exact_expectation: Hamiltonian has " +
                          std::to_string(h.num_qubits()) + " qubits but state has " +
                          std::to_string(state.num_qubits()));
  }
  double e = h.identity_offset();
  for (const auto& t : h.terms()) e += t.coeff * pauli_expectation(state, t.pauli);
  return e;
}

namespace {

std::vector<Complex> apply_hamiltonian(const Hamiltonian& h,
                                       std::span<const Complex> v) {
  std::vector<Complex> out(v.size(), Complex{0, 0});
  for (const auto& t : h.terms()) add_pauli_apply(t.pauli, t.coeff, v, out);
  if (h.identity_offset() != 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += h.identity_offset() * v[i];
  }
  return out;
}

std::pair<QuantumState, double> ground_state_dense(const Hamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  mat.diagonal().setConstant(h.identity_offset());
  for (const auto& t : h.terms()) {
    const PauliMasks m = masks_for(t.pauli);
    const Complex base = t.coeff * m.y_phase;
    for (std::size_t c = 0; c < dim; ++c) {
      const double sign = (std::popcount(c & m.zy_mask) & 1) ? -1.0 : 1.0;
      mat(c ^ m.x_mask, c) += base * sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat);
  if (solver.info() != Eigen::Success) {
    throw InternalError("dense eigendecomposition failed");
  }
  const Eigen::VectorXcd vec = solver.eigenvectors().col(0);
  std::vector<Complex> amps(vec.data(), vec.data() + dim);
  return {QuantumState(h.num_qubits(), std::move(amps)), solver.eigenvalues()(0)};
}

// Lanczos with full reorthogonalization and restarts. The matrix is only
// touched through Hamiltonian-vector products, so memory stays at
// O(subspace * 2^n).
std::pair<QuantumState, double> ground_state_lanczos(const Hamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  constexpr std::size_t kMaxSubspace = 150;
  constexpr int kMaxRestarts = 12;
  constexpr double kResidualTol = 1e-10;

  // Deterministic start vector.
  Philox rng(0x6c616e637a6f73ULL);  // fixed internal seed
  std::vector<Complex> start(dim);
  double norm2 = 0;
  for (auto& a : start) {
    a = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : start) a *= inv;

  double ritz_value = 0;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<std::vector<Complex>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(start);
    std::size_t converged_at = 0;
    Eigen::VectorXd ritz_vec_small;
    for (std::size_t j = 0; j < kMaxSubspace; ++j) {
      std::vector<Complex> w = apply_hamiltonian(h, basis[j]);
      // Full reorthogonalization (twice for stability).
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
          Complex dot = 0;
          for (std::size_t k = 0; k < dim; ++k) dot += std::conj(basis[i][k]) * w[k];
          for (std::size_t k = 0; k < dim; ++k) w[k] -= dot * basis[i][k];
          if (pass == 0 && i == j) alpha.push_back(dot.real());
        }
      }
      double wnorm2 = 0;
      for (const auto& a : w) wnorm2 += std::norm(a);
      const double b = std::sqrt(wnorm2);

      // Smallest Ritz pair of the tridiagonal projection.
      const std::size_t m = alpha.size();
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
      ritz_value = small.eigenvalues()(0);
      ritz_vec_small = small.eigenvectors().col(0);
      const double residual = b * std::abs(ritz_vec_small(m - 1));
      converged_at = m;
      if (residual <= kResidualTol * std::max(1.0, std::abs(ritz_value)) ||
          b < 1e-14 || j + 1 == kMaxSubspace) {
        if (residual <= kResidualTol * std::max(1.0, std::abs(ritz_value)) ||
            b < 1e-14) {
          restart = kMaxRestarts;  // done after assembling the Ritz vector
        }
        break;
      }
      beta.push_back(b);
      for (auto& a : w) a /= b;
      basis.push_back(std::move(w));
    }
    // Assemble the Ritz vector and use it as the next start.
    std::vector<Complex> ritz(dim, Complex{0, 0});
    for (std::size_t i = 0; i < converged_at; ++i) {
      const double ci = ritz_vec_small(i);
      for (std::size_t k = 0; k < dim; ++k) ritz[k] += ci * basis[i][k];
    }
    double rn2 = 0;
    for (const auto& a : ritz) rn2 += std::norm(a);
    const double rinv = 1.0 / std::sqrt(rn2);
    for (auto& a : ritz) a *= rinv;
    start = std::move(ritz);
  }
  return {QuantumState(h.num_qubits(), std::move(start)), ritz_value};
}

}  // namespace

std::pair<QuantumState, double> ground_state(const Hamiltonian& h,
                                             const GroundStateOptions& opts) {
  if (h.num_qubits() > opts.max_qubits) {
    throw InvalidArgument("Hamiltonian on " + std::to_string(h.num_qubits()) +
                          " qubits exceeds the simulator cap of " +
                          std::to_string(opts.max_qubits));
  }
  if (h.num_qubits() <= opts.dense_cutoff) return ground_state_dense(h);
  return ground_state_lanczos(h);
}

std::vector<double> outcome_distribution(const QuantumState& state,
                                         const MeasurementBasis& basis) {
  const auto amps = rotate_to_basis(state, basis);
  std::vector<double> probs(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) probs[k] = std::norm(amps[k]);
  return probs;
}

Outcome sample_outcome(const QuantumState& state, const MeasurementBasis& basis,
                       Philox& rng) {
  return BasisOutcomeSampler(state, basis).sample(rng);
}

BasisOutcomeSampler::BasisOutcomeSampler(const QuantumState& state,
                                         const MeasurementBasis& basis)
    : n_(state.num_qubits()) {
  const auto amps = rotate_to_basis(state, basis);
  cumulative_.resize(amps.size());
  double acc = 0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    acc += std::norm(amps[k]);
    cumulative_[k] = acc;
  }
  cumulative_.back() = std::max(cumulative_.back(), 1.0);
}

std::uint64_t BasisOutcomeSampler::sample_index(Philox& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::uint64_t>(std::distance(cumulative_.begin(), it));
}

Outcome BasisOutcomeSampler::sample(Philox& rng) const {
  return Outcome::from_index(n_, sample_index(rng));
}

}  // namespace paulibench

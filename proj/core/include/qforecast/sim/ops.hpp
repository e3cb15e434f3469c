// Copyright 2026 The qforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "qforecast/sim/circuit.hpp"
#include "qforecast/sim/gate.hpp"
#include "qforecast/sim/state.hpp"

namespace qforecast::sim {

/// Probability vector over computational-basis bitstrings of a qubit subset.
using ProbabilityVector = Eigen::VectorXd;

void apply_gate_inplace(QuantumState& state, const Gate& gate);
/// U|psi> for statevectors, U rho U^dagger for density matrices.
QuantumState apply_gate(const QuantumState& state, const Gate& gate);
/// Throws std::invalid_argument when the register sizes differ.
QuantumState run_circuit(const Circuit& circuit, QuantumState state);

/// Reduced density matrix over `keep`; bit j of the result indexes qubit keep[j].
Eigen::MatrixXcd reduced_density(const QuantumState& state, std::span<const int> keep);
QuantumState partial_trace(const QuantumState& state, std::span<const int> keep);

/// Diagonal of the reduced state over `subset` (bit j <-> subset[j]).
ProbabilityVector computational_distribution(const QuantumState& state, std::span<const int> subset);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

Eigen::Matrix2cd pauli_matrix(Pauli p);
char to_char(Pauli p);

/// Tensor product of single-qubit Paulis on explicit qubits; unspecified qubits are I.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::initializer_list<std::pair<int, Pauli>> ops);

  PauliString& set(int qubit, Pauli p);
  /// Qubits carrying a non-identity operator, ascending.
  std::vector<int> support() const;
  Pauli at(int qubit) const;
  const std::vector<std::pair<int, Pauli>>& ops() const { return ops_; }

 private:
  std::vector<std::pair<int, Pauli>> ops_;  // sorted by qubit, non-identity only
};

/// Largest Pauli support accepted by pauli_expectation.
inline constexpr int kMaxPauliSupport = 2;

/// Tr[P rho] (or <psi|P|psi>). Supports of more than two qubits are rejected.
double pauli_expectation(const QuantumState& state, const PauliString& p);
/// Tr[P rho] for a Pauli acting on the qubits of a small reduced density matrix.
double pauli_expectation(const Eigen::MatrixXcd& rho, std::span<const Pauli> local);

/// |<a|b>|^2 for pure states of equal size; mixed input is rejected.
double fidelity_overlap(const QuantumState& a, const QuantumState& b);

/// Tr[rho^2].
double purity(const Eigen::MatrixXcd& rho);

/// Empirical frequencies of `shots` draws from p; deterministic in seed.
ProbabilityVector sample_distribution(const ProbabilityVector& p, std::uint64_t shots, std::uint64_t seed);

}  // namespace qforecast::sim

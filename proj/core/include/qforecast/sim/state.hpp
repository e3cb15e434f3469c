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

#include "qforecast/sim/gate.hpp"

namespace qforecast::sim {

/// Register caps for dense simulation.
inline constexpr int kMaxDensityQubits = 14;
inline constexpr int kMaxStateVectorQubits = 24;

/// Numerical tolerances used by state validation; all overridable.
struct Tolerances {
  double norm = 1e-10;
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
  double unitarity = 1e-12;
};

enum class Representation { StateVector, DensityMatrix };

/// Pure statevector or density matrix over an ordered qubit register.
///
/// Qubit ordering is little-endian everywhere in this library: qubit q is bit q
/// of a basis-state index, so |q1 q0> = |1 0> is index 2.
class QuantumState {
 public:
  static QuantumState zero(int n_qubits, Representation rep = Representation::StateVector);
  static QuantumState basis(int n_qubits, std::uint64_t index,
                            Representation rep = Representation::StateVector);
  /// Throws if the length is not a power of two or the norm is off by more than tol.norm.
  static QuantumState from_amplitudes(Eigen::VectorXcd amplitudes, const Tolerances& tol = {});
  /// Throws if not square/power-of-two, not Hermitian, or trace is not 1 (within tol).
  /// Positivity is checked by check_state(), not here.
  static QuantumState from_density(Eigen::MatrixXcd rho, const Tolerances& tol = {});

  Representation representation() const { return rep_; }
  bool is_pure() const { return rep_ == Representation::StateVector; }
  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return std::size_t{1} << n_qubits_; }

  const Eigen::VectorXcd& amplitudes() const;
  const Eigen::MatrixXcd& density() const;
  Eigen::VectorXcd& mutable_amplitudes();
  Eigen::MatrixXcd& mutable_density();

  QuantumState to_density() const;

  /// this ⊗ high, with this state's qubits as the low-order qubits of the result.
  QuantumState tensor(const QuantumState& high) const;

 private:
  QuantumState(Representation rep, int n_qubits) : rep_(rep), n_qubits_(n_qubits) {}

  Representation rep_;
  int n_qubits_;
  Eigen::VectorXcd amps_;
  Eigen::MatrixXcd rho_;
};

struct StateCheck {
  double norm_error = 0.0;
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok = true;
};

/// Full invariant check, including the eigenvalue floor for density matrices.
StateCheck check_state(const QuantumState& state, const Tolerances& tol = {});

}  // namespace qforecast::sim

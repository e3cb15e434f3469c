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
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qforecast/sim/circuit.hpp"
#include "qforecast/sim/gate.hpp"
#include "qforecast/sim/ops.hpp"

namespace qforecast::mps {

struct MpsOptions {
  int max_bond = 64;
  /// Singular values below this fraction of the two-site norm are dropped.
  double truncation_threshold = 1e-12;
};

/// Matrix-product state over a chain of qubits.
///
/// Site s holds two Dl x Dr matrices, one per physical value, and the state
/// amplitude is A_0[b_0] A_1[b_1] ... A_{n-1}[b_{n-1}] with b_s the bit of qubit s.
/// The chain is kept in mixed-canonical form around center().
class MpsState {
 public:
  static MpsState zero(int n_qubits, MpsOptions options = {});

  int n_qubits() const { return static_cast<int>(sites_.size()); }
  const MpsOptions& options() const { return options_; }
  int center() const { return center_; }

  /// Dimension of the bond between site b and b + 1.
  int bond_dimension(int bond) const;
  int max_bond_dimension() const;
  /// Complex entries held across all site tensors.
  std::size_t tensor_elements() const;

  /// Accumulated relative weight (sum of squared singular values) dropped by truncation.
  double discarded_weight() const { return discarded_weight_; }
  /// Number of two-site updates where the bond cap forced a drop above the threshold.
  int truncation_events() const { return truncation_events_; }

  /// Two-qubit gates must act on neighbouring sites; others throw std::invalid_argument.
  void apply(const sim::Gate& gate);

  /// Reduced density matrix over one or two sites (bit j <-> sites[j]).
  Eigen::MatrixXcd reduced_density(std::span<const int> sites) const;

  /// Dense contraction; only sensible for small chains.
  Eigen::VectorXcd to_statevector() const;

  /// Moves the orthogonality center to `site` with QR sweeps.
  void move_center(int site);

 private:
  explicit MpsState(MpsOptions options) : options_(options) {}

  using Site = std::array<Eigen::MatrixXcd, 2>;

  void apply_two_site(const sim::Gate& gate);

  std::vector<Site> sites_;
  MpsOptions options_;
  int center_ = 0;
  double discarded_weight_ = 0.0;
  int truncation_events_ = 0;
};

MpsState mps_zero(int n_qubits, MpsOptions options = {});
MpsState mps_apply(MpsState state, const sim::Gate& gate);
MpsState mps_run(const sim::Circuit& circuit, MpsState state);
/// Exact expectation under the current state; supports of more than two sites are rejected.
double mps_pauli_expectation(const MpsState& state, const sim::PauliString& p);

}  // namespace qforecast::mps

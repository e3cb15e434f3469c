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
#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace qforecast::sim {

using cplx = std::complex<double>;

enum class GateKind { H, X, RX, RY, RZ, CNOT, CZ };

std::string_view to_string(GateKind kind);
bool is_rotation(GateKind kind);
int arity(GateKind kind);

/// One gate of the simulator's alphabet.
///
/// Rotations follow R_P(theta) = exp(-i theta P / 2). Two-qubit matrices act on
/// the local index b0 + 2*b1 where b0 is the bit of targets()[0] and b1 the bit
/// of targets()[1]; for CNOT targets()[0] is the control.
class Gate {
 public:
  /// Throws std::invalid_argument on a wrong target count, repeated or negative
  /// targets, an angle on a non-rotation kind, or a rotation without angle.
  Gate(GateKind kind, std::span<const int> targets, std::optional<double> angle = std::nullopt);

  static Gate h(int q);
  static Gate x(int q);
  static Gate rx(int q, double angle);
  static Gate ry(int q, double angle);
  static Gate rz(int q, double angle);
  static Gate cnot(int control, int target);
  static Gate cz(int a, int b);

  GateKind kind() const { return kind_; }
  /// Rotation angle; 0 for fixed gates.
  double angle() const { return angle_; }
  int arity() const { return sim::arity(kind_); }
  std::span<const int> targets() const { return {targets_.data(), static_cast<std::size_t>(arity())}; }
  int target(int i) const { return targets_[static_cast<std::size_t>(i)]; }
  int max_target() const;

  Gate inverse() const;
  /// Same gate with every target shifted by `offset`.
  Gate shifted(int offset) const;

  Eigen::Matrix2cd matrix1() const;
  Eigen::Matrix4cd matrix2() const;
  Eigen::MatrixXcd matrix() const;

  /// True when the gate maps computational basis states to basis states.
  bool is_basis_permutation() const { return kind_ == GateKind::X || kind_ == GateKind::CNOT; }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  GateKind kind_;
  double angle_ = 0.0;
  std::array<int, 2> targets_{0, 0};
};

}  // namespace qforecast::sim

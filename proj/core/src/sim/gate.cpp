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

#include "qforecast/sim/gate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qforecast::sim {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

int arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

Gate::Gate(GateKind kind, std::span<const int> targets, std::optional<double> angle) : kind_(kind) {
  const auto n = static_cast<std::size_t>(sim::arity(kind));
  if (targets.size() != n) {
    throw std::invalid_argument(std::string(to_string(kind)) + ": expected " + std::to_string(n) +
                                " target(s), got " + std::to_string(targets.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (targets[i] < 0) throw std::invalid_argument("gate target must be non-negative");
    targets_[i] = targets[i];
  }
  if (n == 2 && targets_[0] == targets_[1]) {
    throw std::invalid_argument(std::string(to_string(kind)) + ": targets must be distinct");
  }
  if (is_rotation(kind)) {
    if (!angle) throw std::invalid_argument(std::string(to_string(kind)) + ": rotation requires an angle");
    angle_ = *angle;
  } else if (angle) {
    throw std::invalid_argument(std::string(to_string(kind)) + ": angle given for a non-rotation gate");
  }
}

Gate Gate::h(int q) { return Gate(GateKind::H, std::array{q}); }
Gate Gate::x(int q) { return Gate(GateKind::X, std::array{q}); }
Gate Gate::rx(int q, double a) { return Gate(GateKind::RX, std::array{q}, a); }
Gate Gate::ry(int q, double a) { return Gate(GateKind::RY, std::array{q}, a); }
Gate Gate::rz(int q, double a) { return Gate(GateKind::RZ, std::array{q}, a); }
Gate Gate::cnot(int c, int t) { return Gate(GateKind::CNOT, std::array{c, t}); }
Gate Gate::cz(int a, int b) { return Gate(GateKind::CZ, std::array{a, b}); }

int Gate::max_target() const {
  return arity() == 2 ? std::max(targets_[0], targets_[1]) : targets_[0];
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (is_rotation(kind_)) g.angle_ = -angle_;
  return g;
}

Gate Gate::shifted(int offset) const {
  Gate g = *this;
  g.targets_[0] += offset;
  if (arity() == 2) g.targets_[1] += offset;
  if (g.targets_[0] < 0 || g.targets_[1] < 0) throw std::invalid_argument("shifted gate target negative");
  return g;
}

Eigen::Matrix2cd Gate::matrix1() const {
  if (arity() != 1) throw std::logic_error("matrix1() on a two-qubit gate");
  const double c = std::cos(angle_ / 2.0);
  const double s = std::sin(angle_ / 2.0);
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (kind_) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      break;
    }
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::RX: m << c, -i * s, -i * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ: m << std::exp(-i * (angle_ / 2.0)), 0, 0, std::exp(i * (angle_ / 2.0)); break;
    default: throw std::logic_error("unreachable");
  }
  return m;
}

Eigen::Matrix4cd Gate::matrix2() const {
  if (arity() != 2) throw std::logic_error("matrix2() on a single-qubit gate");
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  if (kind_ == GateKind::CNOT) {
    // control = bit 0, target = bit 1: |b0 b1> -> |b0, b1 xor b0>
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
  } else {
    m.diagonal() << 1, 1, 1, -1;
  }
  return m;
}

Eigen::MatrixXcd Gate::matrix() const {
  if (arity() == 1) return matrix1();
  return matrix2();
}

}  // namespace qforecast::sim

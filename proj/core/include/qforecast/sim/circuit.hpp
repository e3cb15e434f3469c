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

#include <cstddef>
#include <vector>

#include "qforecast/sim/gate.hpp"

namespace qforecast::sim {

/// Ordered gate list over a fixed register.
class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Throws std::out_of_range if a target is outside the register.
  Circuit& add(const Gate& gate);
  /// Appends `other` with its qubits shifted by `offset`.
  Circuit& append(const Circuit& other, int offset = 0);

  /// Reversed circuit of inverted gates.
  Circuit inverse() const;

  std::size_t count(GateKind kind) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qforecast::sim

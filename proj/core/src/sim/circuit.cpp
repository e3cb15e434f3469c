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

#include "qforecast/sim/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qforecast::sim {

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

Circuit& Circuit::add(const Gate& gate) {
  if (gate.max_target() >= n_qubits_) {
    throw std::out_of_range(std::string(to_string(gate.kind())) + " target " +
                            std::to_string(gate.max_target()) + " outside " +
                            std::to_string(n_qubits_) + "-qubit register");
  }
  gates_.push_back(gate);
  return *this;
}

Circuit& Circuit::append(const Circuit& other, int offset) {
  for (const Gate& g : other.gates()) add(offset == 0 ? g : g.shifted(offset));
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits_);
  inv.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) inv.gates_.push_back(it->inverse());
  return inv;
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind() == kind; }));
}

}  // namespace qforecast::sim

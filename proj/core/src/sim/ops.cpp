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

#include "qforecast/sim/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qforecast/random.hpp"

namespace qforecast::sim {
namespace {

using Index = std::size_t;

inline Index insert_zero(Index i, int pos) {
  const Index low = (Index{1} << pos) - 1;
  return ((i & ~low) << 1) | (i & low);
}

void kernel_1q(cplx* data, int n_bits, int q, const Eigen::Matrix2cd& u) {
  const Index half = Index{1} << (n_bits - 1);
  const Index bit = Index{1} << q;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (Index i = 0; i < half; ++i) {
    const Index i0 = insert_zero(i, q);
    const Index i1 = i0 | bit;
    const cplx a = data[i0];
    const cplx b = data[i1];
    data[i0] = u00 * a + u01 * b;
    data[i1] = u10 * a + u11 * b;
  }
}

void kernel_x(cplx* data, int n_bits, int q) {
  const Index half = Index{1} << (n_bits - 1);
  const Index bit = Index{1} << q;
  for (Index i = 0; i < half; ++i) {
    const Index i0 = insert_zero(i, q);
    std::swap(data[i0], data[i0 | bit]);
  }
}

template <typename Body>
void for_each_pair_block(int n_bits, int q0, int q1, Body&& body) {
  const int lo = std::min(q0, q1);
  const int hi = std::max(q0, q1);
  const Index quarter = Index{1} << (n_bits - 2);
  const Index b0 = Index{1} << q0;
  const Index b1 = Index{1} << q1;
  for (Index i = 0; i < quarter; ++i) {
    const Index base = insert_zero(insert_zero(i, lo), hi);
    body(base, base | b0, base | b1, base | b0 | b1);
  }
}

void kernel_2q(cplx* data, int n_bits, const Gate& g, bool conjugate) {
  const int q0 = g.target(0);
  const int q1 = g.target(1);
  switch (g.kind()) {
    case GateKind::CNOT:
      for_each_pair_block(n_bits, q0, q1, [data](Index, Index i1, Index, Index i3) {
        std::swap(data[i1], data[i3]);
      });
      return;
    case GateKind::CZ:
      for_each_pair_block(n_bits, q0, q1, [data](Index, Index, Index, Index i3) { data[i3] = -data[i3]; });
      return;
    default: {
      Eigen::Matrix4cd u = g.matrix2();
      if (conjugate) u = u.conjugate().eval();
      for_each_pair_block(n_bits, q0, q1, [&](Index i0, Index i1, Index i2, Index i3) {
        Eigen::Vector4cd v(data[i0], data[i1], data[i2], data[i3]);
        v = u * v;
        data[i0] = v(0);
        data[i1] = v(1);
        data[i2] = v(2);
        data[i3] = v(3);
      });
    }
  }
}

// Applies the gate to a 2^n_bits vector, with qubit offset and optional conjugation.
void apply_to_vector(cplx* data, int n_bits, const Gate& g, int offset, bool conjugate) {
  if (g.arity() == 1) {
    const int q = g.target(0) + offset;
    if (g.kind() == GateKind::X) {
      kernel_x(data, n_bits, q);
      return;
    }
    Eigen::Matrix2cd u = g.matrix1();
    if (conjugate) u = u.conjugate().eval();
    kernel_1q(data, n_bits, q, u);
    return;
  }
  kernel_2q(data, n_bits, offset == 0 ? g : g.shifted(offset), conjugate);
}

void check_subset(std::span<const int> qubits, int n, const char* what) {
  if (qubits.empty()) throw std::invalid_argument(std::string(what) + ": qubit set is empty");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(q) + " outside " +
                              std::to_string(n) + "-qubit register");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " repeated");
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

// Full-register index offsets for every assignment of the given qubits.
std::vector<Index> deposit_table(std::span<const int> qubits) {
  const Index count = Index{1} << qubits.size();
  std::vector<Index> table(count, 0);
  for (Index v = 0; v < count; ++v) {
    Index idx = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      if ((v >> j) & 1U) idx |= Index{1} << qubits[j];
    }
    table[v] = idx;
  }
  return table;
}

std::vector<int> complement(std::span<const int> keep, int n) {
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) kept[static_cast<std::size_t>(q)] = true;
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) rest.push_back(q);
  }
  return rest;
}

}  // namespace

void apply_gate_inplace(QuantumState& state, const Gate& gate) {
  const int n = state.n_qubits();
  if (gate.max_target() >= n) {
    throw std::out_of_range(std::string(to_string(gate.kind())) + " target " +
                            std::to_string(gate.max_target()) + " outside " + std::to_string(n) +
                            "-qubit register");
  }
  if (state.is_pure()) {
    apply_to_vector(state.mutable_amplitudes().data(), n, gate, 0, false);
    return;
  }
  // Column-major rho viewed as a 2n-qubit vector: row bits are qubits 0..n-1,
  // column bits n..2n-1, and vec(U rho U^dagger) = (conj(U) ⊗ U) vec(rho).
  cplx* data = state.mutable_density().data();
  apply_to_vector(data, 2 * n, gate, 0, false);
  apply_to_vector(data, 2 * n, gate, n, true);
}

QuantumState apply_gate(const QuantumState& state, const Gate& gate) {
  QuantumState out = state;
  apply_gate_inplace(out, gate);
  return out;
}

QuantumState run_circuit(const Circuit& circuit, QuantumState state) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("circuit acts on " + std::to_string(circuit.n_qubits()) +
                                " qubits but state has " + std::to_string(state.n_qubits()));
  }
  for (const Gate& g : circuit.gates()) apply_gate_inplace(state, g);
  return state;
}

Eigen::MatrixXcd reduced_density(const QuantumState& state, std::span<const int> keep) {
  const int n = state.n_qubits();
  check_subset(keep, n, "partial_trace");
  const std::vector<int> rest = complement(keep, n);
  const std::vector<Index> kt = deposit_table(keep);
  const std::vector<Index> rt = deposit_table(rest);
  const auto dk = static_cast<Eigen::Index>(kt.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  if (state.is_pure()) {
    const auto& psi = state.amplitudes();
    for (Index e : rt) {
      for (Eigen::Index b = 0; b < dk; ++b) {
        const cplx cb = std::conj(psi(static_cast<Eigen::Index>(kt[static_cast<Index>(b)] | e)));
        if (cb == cplx(0.0, 0.0)) continue;
        for (Eigen::Index a = 0; a < dk; ++a) {
          out(a, b) += psi(static_cast<Eigen::Index>(kt[static_cast<Index>(a)] | e)) * cb;
        }
      }
    }
    return out;
  }
  const auto& rho = state.density();
  for (Index e : rt) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      const auto col = static_cast<Eigen::Index>(kt[static_cast<Index>(b)] | e);
      for (Eigen::Index a = 0; a < dk; ++a) {
        out(a, b) += rho(static_cast<Eigen::Index>(kt[static_cast<Index>(a)] | e), col);
      }
    }
  }
  return out;
}

QuantumState partial_trace(const QuantumState& state, std::span<const int> keep) {
  Eigen::MatrixXcd rho = reduced_density(state, keep);
  // Enforce exact Hermiticity against accumulated rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return QuantumState::from_density(std::move(rho));
}

ProbabilityVector computational_distribution(const QuantumState& state, std::span<const int> subset) {
  const int n = state.n_qubits();
  check_subset(subset, n, "computational_distribution");
  const Index dim = state.dimension();
  ProbabilityVector p = ProbabilityVector::Zero(Eigen::Index{1} << subset.size());
  for (Index i = 0; i < dim; ++i) {
    Index local = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) local |= ((i >> subset[j]) & 1U) << j;
    const auto ii = static_cast<Eigen::Index>(i);
    const double w = state.is_pure() ? std::norm(state.amplitudes()(ii)) : state.density()(ii, ii).real();
    p(static_cast<Eigen::Index>(local)) += w;
  }
  return p;
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::initializer_list<std::pair<int, Pauli>> ops) {
  for (const auto& [q, p] : ops) set(q, p);
}

PauliString& PauliString::set(int qubit, Pauli p) {
  if (qubit < 0) throw std::invalid_argument("Pauli qubit must be non-negative");
  auto it = std::lower_bound(ops_.begin(), ops_.end(), qubit,
                             [](const auto& entry, int q) { return entry.first < q; });
  if (it != ops_.end() && it->first == qubit) {
    if (p == Pauli::I) {
      ops_.erase(it);
    } else {
      it->second = p;
    }
  } else if (p != Pauli::I) {
    ops_.insert(it, {qubit, p});
  }
  return *this;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  s.reserve(ops_.size());
  for (const auto& [q, p] : ops_) s.push_back(q);
  return s;
}

Pauli PauliString::at(int qubit) const {
  for (const auto& [q, p] : ops_) {
    if (q == qubit) return p;
  }
  return Pauli::I;
}

double pauli_expectation(const Eigen::MatrixXcd& rho, std::span<const Pauli> local) {
  const auto k = local.size();
  if (rho.rows() != (Eigen::Index{1} << k)) throw std::invalid_argument("Pauli arity does not match state");
  // Tr[P rho] = sum_{a} sum_{b} P(a,b) rho(b,a), with P a Kronecker product.
  const auto dim = rho.rows();
  cplx acc(0.0, 0.0);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      cplx pab(1.0, 0.0);
      for (std::size_t j = 0; j < k && pab != cplx(0.0, 0.0); ++j) {
        pab *= pauli_matrix(local[j])((a >> j) & 1, (b >> j) & 1);
      }
      if (pab != cplx(0.0, 0.0)) acc += pab * rho(b, a);
    }
  }
  return acc.real();
}

double pauli_expectation(const QuantumState& state, const PauliString& p) {
  const std::vector<int> support = p.support();
  if (support.empty()) return 1.0;
  if (static_cast<int>(support.size()) > kMaxPauliSupport) {
    throw std::invalid_argument("Pauli support of " + std::to_string(support.size()) +
                                " qubits exceeds the supported maximum of 2");
  }
  std::vector<Pauli> local;
  for (int q : support) local.push_back(p.at(q));
  return pauli_expectation(reduced_density(state, support), local);
}

double fidelity_overlap(const QuantumState& a, const QuantumState& b) {
  if (!a.is_pure() || !b.is_pure()) throw std::invalid_argument("fidelity_overlap requires pure states");
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity_overlap: register sizes differ");
  return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

ProbabilityVector sample_distribution(const ProbabilityVector& p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_distribution: shots must be >= 1");
  if (p.size() == 0) throw std::invalid_argument("sample_distribution: empty distribution");
  if ((p.array() < 0.0).any()) throw std::invalid_argument("sample_distribution: negative probability");
  std::vector<double> cumulative(static_cast<std::size_t>(p.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    total += p(i);
    cumulative[static_cast<std::size_t>(i)] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("sample_distribution: zero total probability");
  std::vector<std::uint64_t> counts(cumulative.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    // Skip zero-probability bins that share a cumulative value with their successor.
    while (p(it - cumulative.begin()) == 0.0 && it != cumulative.begin()) --it;
    ++counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  ProbabilityVector out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    out(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(shots);
  }
  return out;
}

}  // namespace qforecast::sim

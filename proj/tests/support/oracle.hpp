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


// Brute-force reference implementations used by the tests. Nothing here calls
// into the simulator: gate matrices are written out by hand, circuits become
// full 2^n x 2^n unitaries, and reductions are explicit index loops.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qforecast/sim/circuit.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat local_matrix(const qforecast::sim::Gate& g) {
  using qforecast::sim::GateKind;
  const cplx i(0.0, 1.0);
  const double c = std::cos(g.angle() / 2.0);
  const double s = std::sin(g.angle() / 2.0);
  Mat m;
  switch (g.kind()) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m.resize(2, 2);
      m << r, r, r, -r;
      break;
    }
    case GateKind::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      break;
    case GateKind::RX:
      m.resize(2, 2);
      m << c, -i * s, -i * s, c;
      break;
    case GateKind::RY:
      m.resize(2, 2);
      m << c, -s, s, c;
      break;
    case GateKind::RZ:
      m.resize(2, 2);
      m << std::exp(-i * (g.angle() / 2.0)), 0, 0, std::exp(i * (g.angle() / 2.0));
      break;
    case GateKind::CNOT:
      // local index b0 + 2 b1 with b0 the control
      m = Mat::Zero(4, 4);
      m(0, 0) = 1;
      m(2, 2) = 1;
      m(3, 1) = 1;
      m(1, 3) = 1;
      break;
    case GateKind::CZ:
      m = Mat::Identity(4, 4);
      m(3, 3) = -1;
      break;
  }
  return m;
}

// Full register matrix of one gate, little-endian qubits.
inline Mat gate_unitary(const qforecast::sim::Gate& g, int n) {
  const Mat local = local_matrix(g);
  const auto t = g.targets();
  const std::size_t dim = std::size_t{1} << n;
  Mat u = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t in_local = 0;
    for (std::size_t j = 0; j < t.size(); ++j) in_local |= ((col >> t[j]) & 1u) << j;
    for (std::size_t out_local = 0; out_local < (std::size_t{1} << t.size()); ++out_local) {
      std::size_t row = col;
      for (std::size_t j = 0; j < t.size(); ++j) {
        row &= ~(std::size_t{1} << t[j]);
        row |= ((out_local >> j) & 1u) << t[j];
      }
      u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          local(static_cast<Eigen::Index>(out_local), static_cast<Eigen::Index>(in_local));
    }
  }
  return u;
}

inline Mat circuit_unitary(const qforecast::sim::Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  Mat u = Mat::Identity(dim, dim);
  for (const auto& g : c.gates()) u = gate_unitary(g, c.n_qubits()) * u;
  return u;
}

inline Vec zero_state(int n) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v(0) = 1.0;
  return v;
}

// Gate-by-gate product on a vector; avoids forming the full circuit unitary.
inline Vec run_circuit(const qforecast::sim::Circuit& c, Vec v) {
  for (const auto& g : c.gates()) v = gate_unitary(g, c.n_qubits()) * v;
  return v;
}

// Tr over every qubit not in keep; bit j of the result is qubit keep[j].
inline Mat partial_trace(const Mat& rho, int n, const std::vector<int>& keep) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t kdim = std::size_t{1} << keep.size();
  std::size_t keep_mask = 0;
  for (int q : keep) keep_mask |= std::size_t{1} << q;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(kdim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~keep_mask) != (c & ~keep_mask)) continue;
      std::size_t kr = 0;
      std::size_t kc = 0;
      for (std::size_t j = 0; j < keep.size(); ++j) {
        kr |= ((r >> keep[j]) & 1u) << j;
        kc |= ((c >> keep[j]) & 1u) << j;
      }
      out(static_cast<Eigen::Index>(kr), static_cast<Eigen::Index>(kc)) +=
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Mat pauli(int p) {
  const cplx i(0.0, 1.0);
  Mat m(2, 2);
  switch (p) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Kronecker product with `low` acting on the low-order qubits.
inline Mat kron(const Mat& high, const Mat& low) {
  Mat out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index a = 0; a < high.rows(); ++a) {
    for (Eigen::Index b = 0; b < high.cols(); ++b) {
      out.block(a * low.rows(), b * low.cols(), low.rows(), low.cols()) = high(a, b) * low;
    }
  }
  return out;
}

// Tr[A B] by explicit double sum.
inline double trace_product(const Mat& a, const Mat& b) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  }
  return s.real();
}

// Smallest eigenvalue of the symmetric part.
inline double min_eig(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// One reservoir step by brute force: evolve the system with the full unitary, attach n ancillas in |0>,
// couple each system qubit to its ancilla with a CNOT, then sum p(m) rho^(m) over every ancilla outcome m.
struct OutcomeSum {
  Mat next;
  Eigen::VectorXd probs;
};

inline OutcomeSum reservoir_outcome_sum(const Mat& rho, const qforecast::sim::Circuit& evolve) {
  const int n = evolve.n_qubits();
  const Mat u = circuit_unitary(evolve);
  const Mat sys = u * rho * u.adjoint();
  Mat anc = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  anc(0, 0) = 1.0;
  qforecast::sim::Circuit couple(2 * n);
  for (int q = 0; q < n; ++q) couple.add(qforecast::sim::Gate::cnot(q, n + q));
  const Mat w = circuit_unitary(couple);
  const Mat joint = w * kron(anc, sys) * w.adjoint();
  const Eigen::Index d = Eigen::Index{1} << n;
  OutcomeSum out{Mat::Zero(d, d), Eigen::VectorXd::Zero(d)};
  for (Eigen::Index m = 0; m < d; ++m) {
    // <m|_anc joint |m>_anc, unnormalized post-measurement system state
    const Mat block = joint.block(m * d, m * d, d, d);
    const double p = block.trace().real();
    out.probs(m) = p;
    if (p > 0.0) out.next += p * (block / p);
  }
  return out;
}

}  // namespace oracle

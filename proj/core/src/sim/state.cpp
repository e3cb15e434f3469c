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

#include "qforecast/sim/state.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qforecast::sim {
namespace {

int qubits_for_dimension(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::invalid_argument("state dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void check_cap(int n, Representation rep) {
  const int cap = rep == Representation::StateVector ? kMaxStateVectorQubits : kMaxDensityQubits;
  if (n < 1) throw std::invalid_argument("register needs at least one qubit");
  if (n > cap) {
    throw std::length_error(std::to_string(n) + " qubits exceeds the " +
                            (rep == Representation::StateVector ? "statevector" : "density-matrix") +
                            " cap of " + std::to_string(cap));
  }
}

}  // namespace

QuantumState QuantumState::zero(int n_qubits, Representation rep) { return basis(n_qubits, 0, rep); }

QuantumState QuantumState::basis(int n_qubits, std::uint64_t index, Representation rep) {
  check_cap(n_qubits, rep);
  QuantumState s(rep, n_qubits);
  const auto dim = static_cast<Eigen::Index>(s.dimension());
  if (index >= static_cast<std::uint64_t>(dim)) throw std::out_of_range("basis index outside register");
  const auto k = static_cast<Eigen::Index>(index);
  if (rep == Representation::StateVector) {
    s.amps_ = Eigen::VectorXcd::Zero(dim);
    s.amps_(k) = 1.0;
  } else {
    s.rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    s.rho_(k, k) = 1.0;
  }
  return s;
}

QuantumState QuantumState::from_amplitudes(Eigen::VectorXcd amplitudes, const Tolerances& tol) {
  const int n = qubits_for_dimension(amplitudes.size());
  check_cap(n, Representation::StateVector);
  const double err = std::abs(amplitudes.norm() - 1.0);
  if (err > tol.norm) {
    throw std::invalid_argument("statevector norm deviates from 1 by " + std::to_string(err));
  }
  QuantumState s(Representation::StateVector, n);
  s.amps_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::from_density(Eigen::MatrixXcd rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix is not square");
  const int n = qubits_for_dimension(rho.rows());
  check_cap(n, Representation::DensityMatrix);
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    throw std::invalid_argument("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = std::abs(rho.trace() - cplx(1.0, 0.0));
  if (tr > tol.trace) {
    throw std::invalid_argument("density matrix trace deviates from 1 by " + std::to_string(tr));
  }
  QuantumState s(Representation::DensityMatrix, n);
  s.rho_ = std::move(rho);
  return s;
}

const Eigen::VectorXcd& QuantumState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("amplitudes() on a density-matrix state");
  return amps_;
}

const Eigen::MatrixXcd& QuantumState::density() const {
  if (is_pure()) throw std::logic_error("density() on a statevector state");
  return rho_;
}

Eigen::VectorXcd& QuantumState::mutable_amplitudes() {
  if (!is_pure()) throw std::logic_error("amplitudes() on a density-matrix state");
  return amps_;
}

Eigen::MatrixXcd& QuantumState::mutable_density() {
  if (is_pure()) throw std::logic_error("density() on a statevector state");
  return rho_;
}

QuantumState QuantumState::to_density() const {
  if (!is_pure()) return *this;
  check_cap(n_qubits_, Representation::DensityMatrix);
  QuantumState s(Representation::DensityMatrix, n_qubits_);
  s.rho_ = amps_ * amps_.adjoint();
  return s;
}

QuantumState QuantumState::tensor(const QuantumState& high) const {
  const int n = n_qubits_ + high.n_qubits_;
  const auto dl = static_cast<Eigen::Index>(dimension());
  const auto dh = static_cast<Eigen::Index>(high.dimension());
  if (is_pure() && high.is_pure()) {
    check_cap(n, Representation::StateVector);
    QuantumState s(Representation::StateVector, n);
    s.amps_.resize(dl * dh);
    for (Eigen::Index h = 0; h < dh; ++h) s.amps_.segment(h * dl, dl) = high.amps_(h) * amps_;
    return s;
  }
  check_cap(n, Representation::DensityMatrix);
  const QuantumState lo = to_density();
  const QuantumState hi = high.to_density();
  QuantumState s(Representation::DensityMatrix, n);
  s.rho_.resize(dl * dh, dl * dh);
  for (Eigen::Index hc = 0; hc < dh; ++hc) {
    for (Eigen::Index hr = 0; hr < dh; ++hr) {
      s.rho_.block(hr * dl, hc * dl, dl, dl) = hi.rho_(hr, hc) * lo.rho_;
    }
  }
  return s;
}

StateCheck check_state(const QuantumState& state, const Tolerances& tol) {
  StateCheck c;
  if (state.is_pure()) {
    c.norm_error = std::abs(state.amplitudes().norm() - 1.0);
    c.min_eigenvalue = 0.0;
    c.ok = c.norm_error <= tol.norm;
    return c;
  }
  const auto& rho = state.density();
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.ok = c.hermiticity_error <= tol.hermiticity && c.trace_error <= tol.trace &&
         c.min_eigenvalue >= tol.min_eigenvalue;
  return c;
}

}  // namespace qforecast::sim

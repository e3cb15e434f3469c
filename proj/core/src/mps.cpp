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

#include "qforecast/mps.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qforecast::mps {

using Eigen::Index;
using Eigen::MatrixXcd;
using sim::cplx;

MpsState MpsState::zero(int n_qubits, MpsOptions options) {
  if (n_qubits < 1) throw std::invalid_argument("mps_zero: need at least one qubit");
  if (options.max_bond < 1) throw std::invalid_argument("mps_zero: max_bond must be >= 1");
  if (!(options.truncation_threshold >= 0.0)) throw std::invalid_argument("mps_zero: negative threshold");
  MpsState s(options);
  s.sites_.resize(static_cast<std::size_t>(n_qubits));
  for (Site& site : s.sites_) {
    site[0] = MatrixXcd::Ones(1, 1);
    site[1] = MatrixXcd::Zero(1, 1);
  }
  return s;
}

int MpsState::bond_dimension(int bond) const {
  if (bond < 0 || bond >= n_qubits() - 1) throw std::out_of_range("bond index outside chain");
  return static_cast<int>(sites_[static_cast<std::size_t>(bond)][0].cols());
}

int MpsState::max_bond_dimension() const {
  Index d = 1;
  for (const Site& s : sites_) d = std::max(d, s[0].cols());
  return static_cast<int>(d);
}

std::size_t MpsState::tensor_elements() const {
  std::size_t total = 0;
  for (const Site& s : sites_) total += static_cast<std::size_t>(s[0].size() + s[1].size());
  return total;
}

void MpsState::move_center(int site) {
  if (site < 0 || site >= n_qubits()) throw std::out_of_range("move_center: site outside chain");
  while (center_ < site) {
    Site& a = sites_[static_cast<std::size_t>(center_)];
    Site& b = sites_[static_cast<std::size_t>(center_ + 1)];
    const Index dl = a[0].rows();
    const Index dr = a[0].cols();
    MatrixXcd m(2 * dl, dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<MatrixXcd> qr(m);
    const Index k = std::min(2 * dl, dr);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(2 * dl, k);
    const MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    a[0] = q.topRows(dl);
    a[1] = q.bottomRows(dl);
    b[0] = (r * b[0]).eval();
    b[1] = (r * b[1]).eval();
    ++center_;
  }
  while (center_ > site) {
    Site& a = sites_[static_cast<std::size_t>(center_)];
    Site& b = sites_[static_cast<std::size_t>(center_ - 1)];
    const Index dl = a[0].rows();
    const Index dr = a[0].cols();
    MatrixXcd m(dl, 2 * dr);
    m << a[0], a[1];
    const MatrixXcd mt = m.adjoint();
    Eigen::HouseholderQR<MatrixXcd> qr(mt);
    const Index k = std::min(dl, 2 * dr);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(2 * dr, k);
    const MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const MatrixXcd qa = q.adjoint();
    a[0] = qa.leftCols(dr);
    a[1] = qa.rightCols(dr);
    const MatrixXcd ra = r.adjoint();
    b[0] = (b[0] * ra).eval();
    b[1] = (b[1] * ra).eval();
    --center_;
  }
}

void MpsState::apply(const sim::Gate& gate) {
  if (gate.max_target() >= n_qubits()) {
    throw std::out_of_range("mps_apply: target " + std::to_string(gate.max_target()) + " outside " +
                            std::to_string(n_qubits()) + "-site chain");
  }
  if (gate.arity() == 1) {
    // A unitary on the physical leg preserves the canonical form.
    Site& s = sites_[static_cast<std::size_t>(gate.target(0))];
    const Eigen::Matrix2cd u = gate.matrix1();
    const MatrixXcd a0 = s[0];
    const MatrixXcd a1 = s[1];
    s[0] = u(0, 0) * a0 + u(0, 1) * a1;
    s[1] = u(1, 0) * a0 + u(1, 1) * a1;
    return;
  }
  apply_two_site(gate);
}

void MpsState::apply_two_site(const sim::Gate& gate) {
  const int t0 = gate.target(0);
  const int t1 = gate.target(1);
  if (std::abs(t0 - t1) != 1) {
    throw std::invalid_argument("mps_apply: " + std::string(sim::to_string(gate.kind())) + " on sites " +
                                std::to_string(t0) + "," + std::to_string(t1) + " is not nearest-neighbour");
  }
  const int i = std::min(t0, t1);
  move_center(i);
  Eigen::Matrix4cd g = gate.matrix2();
  if (t0 != i) {
    // Gate bit order is (target0, target1); the local order is (site i, site i+1).
    const std::array<int, 4> swap_bits{0, 2, 1, 3};
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) p(swap_bits[static_cast<std::size_t>(k)], k) = 1.0;
    g = (p * g * p).eval();
  }
  Site& a = sites_[static_cast<std::size_t>(i)];
  Site& b = sites_[static_cast<std::size_t>(i + 1)];
  const Index dl = a[0].rows();
  const Index dr = b[0].cols();
  std::array<MatrixXcd, 4> theta;
  for (int p1 = 0; p1 < 2; ++p1) {
    for (int p2 = 0; p2 < 2; ++p2) theta[static_cast<std::size_t>(p1 + 2 * p2)] = a[p1] * b[p2];
  }
  MatrixXcd m = MatrixXcd::Zero(2 * dl, 2 * dr);
  for (int out = 0; out < 4; ++out) {
    const int p1 = out & 1;
    const int p2 = out >> 1;
    auto block = m.block(p1 * dl, p2 * dr, dl, dr);
    for (int in = 0; in < 4; ++in) {
      const cplx c = g(out, in);
      if (c != cplx(0.0, 0.0)) block += c * theta[static_cast<std::size_t>(in)];
    }
  }
  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double total = s.squaredNorm();
  const double norm = std::sqrt(total);
  Index keep = 0;
  while (keep < s.size() && s(keep) > options_.truncation_threshold * norm) ++keep;
  keep = std::max<Index>(1, std::min<Index>(keep, options_.max_bond));
  const double dropped = total > 0.0 ? s.tail(s.size() - keep).squaredNorm() / total : 0.0;
  discarded_weight_ += dropped;
  if (dropped > options_.truncation_threshold) ++truncation_events_;
  const Eigen::VectorXd kept = s.head(keep) / s.head(keep).norm();
  const MatrixXcd u = svd.matrixU().leftCols(keep);
  const MatrixXcd sv = kept.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  a[0] = u.topRows(dl);
  a[1] = u.bottomRows(dl);
  b[0] = sv.leftCols(dr);
  b[1] = sv.rightCols(dr);
  center_ = i + 1;
}

Eigen::MatrixXcd MpsState::reduced_density(std::span<const int> sites) const {
  if (sites.empty() || sites.size() > 2) {
    throw std::invalid_argument("reduced_density: supports one or two sites, got " + std::to_string(sites.size()));
  }
  for (int s : sites) {
    if (s < 0 || s >= n_qubits()) throw std::out_of_range("reduced_density: site outside chain");
  }
  if (sites.size() == 2 && sites[0] == sites[1]) throw std::invalid_argument("reduced_density: repeated site");
  const int i = *std::min_element(sites.begin(), sites.end());
  const int j = *std::max_element(sites.begin(), sites.end());
  auto site = [this](int k) -> const Site& { return sites_[static_cast<std::size_t>(k)]; };

  // Left environment at site i; identity when everything left of i is left-canonical.
  MatrixXcd left = MatrixXcd::Identity(site(i)[0].rows(), site(i)[0].rows());
  if (center_ < i) {
    left = MatrixXcd::Identity(site(center_)[0].rows(), site(center_)[0].rows());
    for (int k = center_; k < i; ++k) {
      left = (site(k)[0].adjoint() * left * site(k)[0] + site(k)[1].adjoint() * left * site(k)[1]).eval();
    }
  }
  // Right environment after site j.
  MatrixXcd right = MatrixXcd::Identity(site(j)[0].cols(), site(j)[0].cols());
  if (center_ > j) {
    right = MatrixXcd::Identity(site(center_)[0].cols(), site(center_)[0].cols());
    for (int k = center_; k > j; --k) {
      right = (site(k)[0] * right * site(k)[0].adjoint() + site(k)[1] * right * site(k)[1].adjoint()).eval();
    }
  }

  MatrixXcd rho;
  if (i == j) {
    rho.resize(2, 2);
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) rho(p, q) = (site(i)[p] * right * site(i)[q].adjoint() * left).trace();
    }
  } else {
    // local index bit 0 <-> site i, bit 1 <-> site j.
    rho.resize(4, 4);
    for (int q = 0; q < 2; ++q) {
      for (int qp = 0; qp < 2; ++qp) {
        MatrixXcd x = site(j)[q] * right * site(j)[qp].adjoint();
        for (int k = j - 1; k > i; --k) {
          x = (site(k)[0] * x * site(k)[0].adjoint() + site(k)[1] * x * site(k)[1].adjoint()).eval();
        }
        for (int p = 0; p < 2; ++p) {
          for (int pp = 0; pp < 2; ++pp) {
            rho(p + 2 * q, pp + 2 * qp) = (site(i)[p] * x * site(i)[pp].adjoint() * left).trace();
          }
        }
      }
    }
    if (sites[0] != i) {
      const std::array<int, 4> swap_bits{0, 2, 1, 3};
      MatrixXcd swapped(4, 4);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          swapped(swap_bits[static_cast<std::size_t>(r)], swap_bits[static_cast<std::size_t>(c)]) = rho(r, c);
        }
      }
      rho = swapped;
    }
  }
  const cplx tr = rho.trace();
  return rho / tr.real();
}

Eigen::VectorXcd MpsState::to_statevector() const {
  if (n_qubits() > sim::kMaxStateVectorQubits) throw std::length_error("to_statevector: chain too long");
  MatrixXcd psi = MatrixXcd::Ones(1, 1);
  for (int k = 0; k < n_qubits(); ++k) {
    const Site& s = sites_[static_cast<std::size_t>(k)];
    const Index rows = psi.rows();
    MatrixXcd next(2 * rows, s[0].cols());
    next.topRows(rows) = psi * s[0];
    next.bottomRows(rows) = psi * s[1];
    psi = std::move(next);
  }
  Eigen::VectorXcd v = psi.col(0);
  return v / v.norm();
}

MpsState mps_zero(int n_qubits, MpsOptions options) { return MpsState::zero(n_qubits, options); }

MpsState mps_apply(MpsState state, const sim::Gate& gate) {
  state.apply(gate);
  return state;
}

MpsState mps_run(const sim::Circuit& circuit, MpsState state) {
  if (circuit.n_qubits() != state.n_qubits()) throw std::invalid_argument("mps_run: register size mismatch");
  for (const sim::Gate& g : circuit.gates()) state.apply(g);
  return state;
}

double mps_pauli_expectation(const MpsState& state, const sim::PauliString& p) {
  const std::vector<int> support = p.support();
  if (support.empty()) return 1.0;
  if (static_cast<int>(support.size()) > sim::kMaxPauliSupport) {
    throw std::invalid_argument("mps_pauli_expectation: operator arity " + std::to_string(support.size()) +
                                " not supported");
  }
  std::vector<sim::Pauli> local;
  for (int q : support) local.push_back(p.at(q));
  return sim::pauli_expectation(state.reduced_density(support), local);
}

}  // namespace qforecast::mps

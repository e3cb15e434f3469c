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

#include "qforecast/qgp/projected_kernel.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "qforecast/parallel.hpp"
#include "qforecast/sim/ops.hpp"

namespace qforecast::qgp {
namespace {

constexpr std::array<sim::Pauli, 4> kPaulis{sim::Pauli::I, sim::Pauli::X, sim::Pauli::Y, sim::Pauli::Z};

void fill_row(ExpectationTable& table, std::size_t r, const Eigen::MatrixXcd& rho) {
  const int k = table.locality;
  for (int p = 0; p < table.values.cols(); ++p) {
    std::array<sim::Pauli, 2> local{kPaulis[static_cast<std::size_t>(p % 4)], kPaulis[static_cast<std::size_t>(p / 4)]};
    table.values(static_cast<Eigen::Index>(r), p) =
        p == 0 ? 1.0 : sim::pauli_expectation(rho, std::span<const sim::Pauli>(local.data(), static_cast<std::size_t>(k)));
  }
}

void check_structure(const ExpectationTable& a, const ExpectationTable& b) {
  if (a.locality != b.locality || a.subsets != b.subsets || a.values.rows() != b.values.rows() ||
      a.values.cols() != b.values.cols()) {
    throw std::invalid_argument("projected kernel: expectation tables have different subset structure");
  }
}

}  // namespace

ExpectationTable expectation_table(std::span<const double> x, const FeatureMapParams& params, const SimOptions& sim,
                                   ExecutionCounter* counter) {
  const sim::Circuit circuit = build_feature_map(x, params);
  ExpectationTable table;
  table.locality = params.locality;
  table.subsets = coupled_subsets(params.n_qubits, params.locality);
  table.values.resize(static_cast<Eigen::Index>(table.subsets.size()), 1 << (2 * params.locality));

  if (sim.backend == Backend::Dense) {
    if (params.n_qubits > sim::kMaxStateVectorQubits) {
      throw std::invalid_argument("dense backend supports at most " + std::to_string(sim::kMaxStateVectorQubits) +
                                  " qubits; use the mps backend for " + std::to_string(params.n_qubits));
    }
    const auto state = sim::run_circuit(circuit, sim::QuantumState::zero(params.n_qubits));
    for (std::size_t r = 0; r < table.subsets.size(); ++r) fill_row(table, r, sim::reduced_density(state, table.subsets[r]));
  } else {
    auto state = mps::mps_run(circuit, mps::mps_zero(params.n_qubits, sim.mps));
    for (std::size_t r = 0; r < table.subsets.size(); ++r) {
      state.move_center(table.subsets[r].front());
      fill_row(table, r, state.reduced_density(table.subsets[r]));
    }
  }
  if (counter != nullptr) {
    counter->tables += 1;
    counter->basis_settings += table.subsets.size() * (params.locality == 2 ? 9u : 3u);
  }
  return table;
}

std::vector<ExpectationTable> expectation_tables(const Eigen::MatrixXd& inputs, const FeatureMapParams& params,
                                                 const SimOptions& sim, ExecutionCounter* counter) {
  params.validate();
  if (inputs.cols() != params.n_qubits) {
    throw std::invalid_argument("inputs have " + std::to_string(inputs.cols()) + " columns for a " +
                                std::to_string(params.n_qubits) + "-qubit feature map");
  }
  std::vector<ExpectationTable> tables(static_cast<std::size_t>(inputs.rows()));
  parallel_for(tables.size(), sim.workers == 0 ? default_workers() : sim.workers, [&](std::size_t i) {
    const Eigen::VectorXd x = inputs.row(static_cast<Eigen::Index>(i)).transpose();
    tables[i] = expectation_table(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), params, sim,
                                  counter);
  });
  return tables;
}

double projected_kernel_entry(const ExpectationTable& a, const ExpectationTable& b) {
  check_structure(a, b);
  const double weight = a.locality == 2 ? 0.25 : 0.5;
  return weight * a.values.cwiseProduct(b.values).sum();
}

Eigen::MatrixXd projected_kernel_matrix(std::span<const ExpectationTable> tables) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(tables.size()), static_cast<Eigen::Index>(tables.size()));
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = projected_kernel_entry(tables[i], tables[j]);
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return k;
}

Eigen::MatrixXd projected_kernel_matrix(std::span<const ExpectationTable> rows, std::span<const ExpectationTable> cols) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = projected_kernel_entry(rows[i], cols[j]);
    }
  }
  return k;
}

Eigen::MatrixXd expectation_matrix(std::span<const ExpectationTable> tables) {
  if (tables.empty()) return {};
  const Eigen::Index width = tables.front().values.size();
  Eigen::MatrixXd e(static_cast<Eigen::Index>(tables.size()), width);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    check_structure(tables.front(), tables[i]);
    // Row-major flattening of the table keeps subset blocks contiguous.
    const Eigen::MatrixXd& v = tables[i].values;
    for (Eigen::Index r = 0; r < v.rows(); ++r) e.row(static_cast<Eigen::Index>(i)).segment(r * v.cols(), v.cols()) = v.row(r);
  }
  return e;
}

}  // namespace qforecast::qgp

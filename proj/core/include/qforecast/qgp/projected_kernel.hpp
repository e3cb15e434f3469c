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
#include <atomic>
#include <cstddef>
#include <span>
#include <vector>

#include "qforecast/qgp/feature_map.hpp"

namespace qforecast::qgp {

/// Local Pauli expectations of one encoded datapoint.
///
/// Row r belongs to subset r; column p encodes the Pauli string with
/// p = p_0 + 4 p_1 where p_j in {I, X, Y, Z} acts on subsets[r][j].
struct ExpectationTable {
  int locality = 2;
  std::vector<std::vector<int>> subsets;
  Eigen::MatrixXd values;  // subsets x 4^locality
};

/// Counts simulated work. One table is one circuit-evaluation batch; basis
/// settings count grouped measurement bases ({X,Y,Z}^k per subset).
struct ExecutionCounter {
  std::atomic<std::size_t> tables{0};
  std::atomic<std::size_t> basis_settings{0};

  void reset() {
    tables = 0;
    basis_settings = 0;
  }
};

ExpectationTable expectation_table(std::span<const double> x, const FeatureMapParams& params,
                                   const SimOptions& sim = {}, ExecutionCounter* counter = nullptr);

/// One table per row of `inputs` (N x n_q), evaluated concurrently.
std::vector<ExpectationTable> expectation_tables(const Eigen::MatrixXd& inputs, const FeatureMapParams& params,
                                                 const SimOptions& sim = {}, ExecutionCounter* counter = nullptr);

/// Sum over subsets of 2^-k sum_P <P>_a <P>_b. Throws on a subset-structure mismatch.
double projected_kernel_entry(const ExpectationTable& a, const ExpectationTable& b);

Eigen::MatrixXd projected_kernel_matrix(std::span<const ExpectationTable> tables);
/// Cross kernel with rows from `rows` and columns from `cols`.
Eigen::MatrixXd projected_kernel_matrix(std::span<const ExpectationTable> rows, std::span<const ExpectationTable> cols);

/// Flattened tables as an N x (subsets * 4^k) matrix E, so that K = 2^-k E E^T.
Eigen::MatrixXd expectation_matrix(std::span<const ExpectationTable> tables);

}  // namespace qforecast::qgp

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

#include <cstdint>
#include <nlohmann/json.hpp>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qforecast/mps.hpp"
#include "qforecast/sim/circuit.hpp"

namespace qforecast::qgp {

enum class Backend { Dense, Mps };
std::string to_string(Backend b);
Backend backend_from_string(std::string_view s);

/// Simulation settings shared by every expectation-table evaluation.
struct SimOptions {
  Backend backend = Backend::Dense;
  mps::MpsOptions mps;
  std::size_t workers = 0;  // 0 picks the hardware concurrency
};

/// Hardware-efficient feature map on a qubit chain, one qubit per customer.
struct FeatureMapParams {
  int n_qubits = 0;
  std::vector<double> theta;  // one trainable RY angle per qubit
  double angle_scale = std::numbers::pi;
  int locality = 2;  // 2: adjacent pairs, 1: single qubits

  /// Throws std::invalid_argument when |theta| != n_qubits, n_qubits < 2 or locality not in {1, 2}.
  void validate() const;

  static FeatureMapParams zeros(int n_qubits);
  /// Uniform theta in [-range, range].
  static FeatureMapParams random(int n_qubits, std::uint64_t seed, double range = 0.1);
  /// Repeats the angle pattern of `pattern` across n_qubits.
  static FeatureMapParams tiled(const FeatureMapParams& pattern, int n_qubits);
};

nlohmann::json to_json(const FeatureMapParams& p);
FeatureMapParams feature_map_params_from_json(const nlohmann::json& j);

/// H on all qubits; RY(a x_i); CNOT chain i -> i+1; RX(a x_i); CNOT chain; RY(theta_i).
sim::Circuit build_feature_map(std::span<const double> x, const FeatureMapParams& params);

/// The n_q - 1 adjacent pairs {i, i+1} (locality 2) or the n_q singletons (locality 1).
std::vector<std::vector<int>> coupled_subsets(int n_qubits, int locality = 2);

}  // namespace qforecast::qgp

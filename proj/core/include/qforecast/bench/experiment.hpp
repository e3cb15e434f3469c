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
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qforecast/bench/config.hpp"
#include "qforecast/data.hpp"
#include "qforecast/diagnostics.hpp"

namespace qforecast::bench {

struct WindowInfo {
  int index = 0;
  int origin = 0;
  std::string hash;
  double mean_abs_train = 0.0;  // denominator of the relative error
};

struct ModelWindowResult {
  std::string model;
  int window = 0;
  Eigen::MatrixXd predictions;  // customers x horizon, normalized
  Eigen::MatrixXd truth;
  nlohmann::json info = nlohmann::json::object();  // model-specific extras (trained angles, noise, ...)
};

struct LossTrace {
  std::string model;
  int window = 0;
  std::vector<double> values;
};

struct ScalingPoint {
  int n_qubits = 0;
  bool entangled = false;
  double mean_relative_error = 0.0;
  double mean_mae = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;  // effective configuration
  std::vector<std::string> customer_ids;
  std::vector<WindowInfo> windows;
  std::vector<std::string> models;
  std::vector<ModelWindowResult> results;  // model-major, then window
  std::vector<LossTrace> loss_traces;
  std::vector<diagnostics::DiagnosticsRecord> diagnostics;
  std::vector<ScalingPoint> qubit_scaling;
  std::vector<std::string> notes;
  double wall_clock_seconds = 0.0;
};

data::TimeSeriesDataset load_dataset(const ExperimentConfig& cfg);
/// Throws ConfigError when the selection does not fit the dataset.
data::SubsetSpec resolve_subset(const data::TimeSeriesDataset& ds, const ExperimentConfig& cfg);

/// Diagnostics samples from a group: inputs are the min-max scaled observations
/// at hour t, the target is the scaled group mean at hour t + 1.
void diagnostics_samples(const data::TimeSeriesDataset& ds, const data::SubsetSpec& subset, Eigen::MatrixXd& inputs,
                         Eigen::VectorXd& targets);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace qforecast::bench

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
#include <vector>

#include "qforecast/bench/metrics.hpp"
#include "qforecast/data.hpp"
#include "qforecast/qgp/feature_map.hpp"
#include "qforecast/qgp/trainer.hpp"

namespace qforecast::qgp {

struct QgpConfig {
  double angle_scale = std::numbers::pi;
  int locality = 2;
  SimOptions sim;
  TrainerConfig trainer;
  bool train = true;
  /// Preset theta pattern, tiled across the group; empty means seeded random init.
  std::vector<double> theta;
  bool center_targets = true;

  void validate() const;
};

nlohmann::json to_json(const QgpConfig& c);
QgpConfig qgp_config_from_json(const nlohmann::json& j);

/// Forecast of one window in normalized units. One kernel is trained on the
/// one-step pairs (x_t, x_{t+1}); each horizon h then gets its own GP on the
/// pairs (x_t, x_{t+h}) and predicts from the last training observation.
struct QgpForecastResult {
  Eigen::MatrixXd predictions;  // customers x horizon
  Eigen::VectorXd variance;     // predictive variance per horizon GP
  Eigen::MatrixXd truth;
  Eigen::MatrixXd persistence;
  bench::Metrics metrics;
  bench::Metrics persistence_metrics;
  TrainingResult training;
  double max_variance_clamp = 0.0;
};

/// Throws std::invalid_argument when the window has fewer than horizon + 2
/// training steps or fewer than 2 customers.
QgpForecastResult qgp_forecast(const data::WindowSplit& window, const QgpConfig& cfg);

}  // namespace qforecast::qgp

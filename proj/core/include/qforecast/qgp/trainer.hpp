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
#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "qforecast/qgp/feature_map.hpp"

namespace qforecast::qgp {

struct LikelihoodEval {
  double value = 0.0;        // marginal log-likelihood
  Eigen::VectorXd d_theta;   // parameter-shift gradient
  double d_noise = 0.0;      // d value / d noise variance
};

/// Projected-kernel GP likelihood on inputs X (N x n_q) and targets Y (N x D).
/// The theta gradient uses the two-point parameter-shift rule on every local
/// expectation and is exact up to floating point.
LikelihoodEval likelihood_with_gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                        const FeatureMapParams& params, double noise, const SimOptions& sim = {},
                                        bool with_gradient = true);

struct TrainerConfig {
  int iterations = 100;
  double step = 0.05;
  std::uint64_t seed = 11;
  double init_theta_range = 0.1;
  double init_noise = 0.01;
  double min_noise = 1e-6;
  /// Ascend the likelihood divided by N * D so the step is insensitive to problem size.
  bool normalize_objective = true;

  void validate() const;
};

nlohmann::json to_json(const TrainerConfig& c);
TrainerConfig trainer_config_from_json(const nlohmann::json& j);

struct TrainingResult {
  FeatureMapParams params;
  double noise = 0.0;
  std::vector<double> loss_trace;  // negative log-likelihood, initial value first
};

/// Gradient ascent on theta and log(noise). Throws std::runtime_error when the
/// likelihood becomes non-finite.
TrainingResult train(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const FeatureMapParams& init,
                     double init_noise, const TrainerConfig& cfg, const SimOptions& sim = {});

}  // namespace qforecast::qgp

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
#include <array>
#include <string>
#include <vector>

namespace qforecast::bench {

/// Error summary of a forecast block. Rows are customers (streams), columns
/// are horizon steps.
struct Metrics {
  Eigen::VectorXd mae_per_horizon;  // across customers at a fixed step
  Eigen::VectorXd mse_per_horizon;
  Eigen::VectorXd mae_per_customer;  // across steps for one customer
  Eigen::VectorXd mse_per_customer;
  Eigen::MatrixXd abs_error;  // |pred - truth|
  Eigen::MatrixXd sq_error;
  double mae = 0.0;
  double mse = 0.0;
};

/// Throws std::invalid_argument on a shape mismatch or empty input.
Metrics compute_metrics(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& truth);

enum class Tier { Low, Medium, High };
std::string to_string(Tier tier);

inline constexpr double kLowTierBound = 0.15;
inline constexpr double kHighTierBound = 0.35;

/// MAE < 0.15 is Low, MAE > 0.35 is High, everything in [0.15, 0.35] is Medium.
Tier classify_tier(double mae);

struct TierRow {
  Tier tier = Tier::Low;
  int count = 0;
  double share_percent = 0.0;
  double avg_mae = 0.0;
  double avg_mse = 0.0;
};

/// Always three rows (Low, Medium, High); empty tiers report zero share and averages.
std::array<TierRow, 3> tier_classify(const std::vector<double>& mae, const std::vector<double>& mse);

}  // namespace qforecast::bench

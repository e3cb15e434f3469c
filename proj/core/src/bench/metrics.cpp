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

#include "qforecast/bench/metrics.hpp"

#include <stdexcept>

namespace qforecast::bench {

Metrics compute_metrics(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& truth) {
  if (prediction.rows() != truth.rows() || prediction.cols() != truth.cols()) {
    throw std::invalid_argument("compute_metrics: prediction is " + std::to_string(prediction.rows()) + "x" +
                                std::to_string(prediction.cols()) + " but truth is " +
                                std::to_string(truth.rows()) + "x" + std::to_string(truth.cols()));
  }
  if (prediction.size() == 0) throw std::invalid_argument("compute_metrics: empty input");
  Metrics m;
  const Eigen::MatrixXd err = prediction - truth;
  m.abs_error = err.cwiseAbs();
  m.sq_error = err.cwiseAbs2();
  m.mae_per_horizon = m.abs_error.colwise().mean().transpose();
  m.mse_per_horizon = m.sq_error.colwise().mean().transpose();
  m.mae_per_customer = m.abs_error.rowwise().mean();
  m.mse_per_customer = m.sq_error.rowwise().mean();
  m.mae = m.abs_error.mean();
  m.mse = m.sq_error.mean();
  return m;
}

std::string to_string(Tier tier) {
  switch (tier) {
    case Tier::Low: return "Low";
    case Tier::Medium: return "Medium";
    case Tier::High: return "High";
  }
  return "?";
}

Tier classify_tier(double mae) {
  if (mae < kLowTierBound) return Tier::Low;
  if (mae > kHighTierBound) return Tier::High;
  return Tier::Medium;
}

std::array<TierRow, 3> tier_classify(const std::vector<double>& mae, const std::vector<double>& mse) {
  if (mae.size() != mse.size()) throw std::invalid_argument("tier_classify: MAE and MSE lists differ in length");
  std::array<TierRow, 3> rows{TierRow{Tier::Low}, TierRow{Tier::Medium}, TierRow{Tier::High}};
  for (std::size_t i = 0; i < mae.size(); ++i) {
    TierRow& r = rows[static_cast<std::size_t>(classify_tier(mae[i]))];
    ++r.count;
    r.avg_mae += mae[i];
    r.avg_mse += mse[i];
  }
  for (TierRow& r : rows) {
    if (r.count > 0) {
      r.avg_mae /= r.count;
      r.avg_mse /= r.count;
    }
    r.share_percent = mae.empty() ? 0.0 : 100.0 * r.count / static_cast<double>(mae.size());
  }
  return rows;
}

}  // namespace qforecast::bench

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

#include "qforecast/qgp/forecast.hpp"

#include <stdexcept>
#include <string>

#include "qforecast/kqrc.hpp"
#include "qforecast/qgp/gp.hpp"
#include "qforecast/qgp/projected_kernel.hpp"

namespace qforecast::qgp {

void QgpConfig::validate() const {
  if (locality != 1 && locality != 2) throw std::invalid_argument("qgp.locality must be 1 or 2");
  if (!std::isfinite(angle_scale)) throw std::invalid_argument("qgp.angle_scale must be finite");
  trainer.validate();
}

nlohmann::json to_json(const QgpConfig& c) {
  return {{"angle_scale", c.angle_scale},
          {"locality", c.locality},
          {"backend", to_string(c.sim.backend)},
          {"max_bond", c.sim.mps.max_bond},
          {"truncation_threshold", c.sim.mps.truncation_threshold},
          {"trainer", to_json(c.trainer)},
          {"train", c.train},
          {"theta", c.theta},
          {"center_targets", c.center_targets}};
}

QgpConfig qgp_config_from_json(const nlohmann::json& j) {
  QgpConfig c;
  c.angle_scale = j.value("angle_scale", c.angle_scale);
  c.locality = j.value("locality", c.locality);
  if (j.contains("backend")) c.sim.backend = backend_from_string(j.at("backend").get<std::string>());
  c.sim.mps.max_bond = j.value("max_bond", c.sim.mps.max_bond);
  c.sim.mps.truncation_threshold = j.value("truncation_threshold", c.sim.mps.truncation_threshold);
  if (j.contains("trainer")) c.trainer = trainer_config_from_json(j.at("trainer"));
  c.train = j.value("train", c.train);
  c.theta = j.value("theta", c.theta);
  c.center_targets = j.value("center_targets", c.center_targets);
  return c;
}

QgpForecastResult qgp_forecast(const data::WindowSplit& window, const QgpConfig& cfg) {
  cfg.validate();
  const int n_q = static_cast<int>(window.train.rows());
  const int t_len = static_cast<int>(window.train.cols());
  const int horizon = window.horizon;
  if (n_q < 2) throw std::invalid_argument("qgp_forecast: need at least 2 customers");
  if (t_len < horizon + 2) {
    throw std::invalid_argument("qgp_forecast: " + std::to_string(t_len) + " training steps cannot support horizon " +
                                std::to_string(horizon));
  }
  const Eigen::MatrixXd obs = window.train.transpose();  // T x n_q

  FeatureMapParams init;
  if (cfg.theta.empty()) {
    init = FeatureMapParams::random(n_q, cfg.trainer.seed, cfg.trainer.init_theta_range);
  } else {
    init = FeatureMapParams::zeros(n_q);
    for (int i = 0; i < n_q; ++i) init.theta[static_cast<std::size_t>(i)] = cfg.theta[static_cast<std::size_t>(i) % cfg.theta.size()];
  }
  init.angle_scale = cfg.angle_scale;
  init.locality = cfg.locality;

  auto centered = [&](const Eigen::MatrixXd& y, Eigen::RowVectorXd& offset) {
    offset = cfg.center_targets ? Eigen::RowVectorXd(y.colwise().mean()) : Eigen::RowVectorXd::Zero(y.cols());
    return Eigen::MatrixXd(y.rowwise() - offset);
  };

  QgpForecastResult r;
  if (cfg.train) {
    Eigen::RowVectorXd offset;
    const Eigen::MatrixXd y1 = centered(obs.bottomRows(t_len - 1), offset);
    r.training = train(obs.topRows(t_len - 1), y1, init, cfg.trainer.init_noise, cfg.trainer, cfg.sim);
  } else {
    r.training.params = init;
    r.training.noise = cfg.trainer.init_noise;
  }

  const auto tables = expectation_tables(obs, r.training.params, cfg.sim);
  const Eigen::MatrixXd k_all = projected_kernel_matrix(tables);
  r.predictions.resize(n_q, horizon);
  r.variance.resize(horizon);
  for (int h = 1; h <= horizon; ++h) {
    const int rows = t_len - h;
    Eigen::RowVectorXd offset;
    const Eigen::MatrixXd y = centered(obs.middleRows(h, rows), offset);
    const GpModel model = gp_fit(k_all.topLeftCorner(rows, rows), y, r.training.noise);
    const Eigen::MatrixXd k_star = k_all.block(t_len - 1, 0, 1, rows);
    const Eigen::VectorXd k_ss = Eigen::VectorXd::Constant(1, k_all(t_len - 1, t_len - 1));
    const GpPrediction p = gp_predict(model, k_star, k_ss);
    r.predictions.col(h - 1) = (p.mean.row(0) + offset).transpose();
    r.variance(h - 1) = p.variance(0);
    r.max_variance_clamp = std::max(r.max_variance_clamp, p.max_clamp);
  }
  r.truth = window.test;
  r.persistence = kqrc::persistence_forecast(window);
  r.metrics = bench::compute_metrics(r.predictions, r.truth);
  r.persistence_metrics = bench::compute_metrics(r.persistence, r.truth);
  return r;
}

}  // namespace qforecast::qgp

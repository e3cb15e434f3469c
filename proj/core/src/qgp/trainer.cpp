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

#include "qforecast/qgp/trainer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qforecast/linalg.hpp"
#include "qforecast/qgp/projected_kernel.hpp"

namespace qforecast::qgp {

LikelihoodEval likelihood_with_gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                        const FeatureMapParams& params, double noise, const SimOptions& sim,
                                        bool with_gradient) {
  params.validate();
  if (x.rows() != y.rows()) throw std::invalid_argument("likelihood: inputs and targets differ in row count");
  if (!(noise > 0.0)) throw std::invalid_argument("likelihood: noise variance must be > 0");
  const double weight = params.locality == 2 ? 0.25 : 0.5;
  const Eigen::MatrixXd e = expectation_matrix(expectation_tables(x, params, sim));
  Eigen::MatrixXd c = weight * e * e.transpose();
  c.diagonal().array() += noise;
  const auto llt = linalg::cholesky(c, "likelihood: K + noise I");
  const Eigen::MatrixXd alpha = llt.solve(y);
  const double n = static_cast<double>(y.rows());
  const double d = static_cast<double>(y.cols());

  LikelihoodEval out;
  out.value = -0.5 * (y.array() * alpha.array()).sum() - 0.5 * d * linalg::log_det(llt) -
              0.5 * n * d * std::log(2.0 * std::numbers::pi);
  if (!with_gradient) return out;

  const Eigen::MatrixXd c_inv = llt.solve(Eigen::MatrixXd::Identity(c.rows(), c.cols()));
  const Eigen::MatrixXd g = 0.5 * alpha * alpha.transpose() - 0.5 * d * c_inv;
  out.d_noise = g.trace();
  out.d_theta.resize(params.n_qubits);
  for (int i = 0; i < params.n_qubits; ++i) {
    FeatureMapParams plus = params;
    FeatureMapParams minus = params;
    plus.theta[static_cast<std::size_t>(i)] += std::numbers::pi / 2.0;
    minus.theta[static_cast<std::size_t>(i)] -= std::numbers::pi / 2.0;
    const Eigen::MatrixXd de =
        0.5 * (expectation_matrix(expectation_tables(x, plus, sim)) - expectation_matrix(expectation_tables(x, minus, sim)));
    // dK = w (dE E^T + E dE^T) and G is symmetric.
    out.d_theta(i) = 2.0 * weight * g.cwiseProduct(de * e.transpose()).sum();
  }
  return out;
}

void TrainerConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("trainer.iterations must be >= 0");
  if (!(step > 0.0)) throw std::invalid_argument("trainer.step must be > 0");
  if (!(init_noise > 0.0)) throw std::invalid_argument("trainer.init_noise must be > 0");
  if (!(min_noise > 0.0)) throw std::invalid_argument("trainer.min_noise must be > 0");
  if (init_theta_range < 0.0) throw std::invalid_argument("trainer.init_theta_range must be >= 0");
}

nlohmann::json to_json(const TrainerConfig& c) {
  return {{"iterations", c.iterations},
          {"step", c.step},
          {"seed", c.seed},
          {"init_theta_range", c.init_theta_range},
          {"init_noise", c.init_noise},
          {"min_noise", c.min_noise},
          {"normalize_objective", c.normalize_objective}};
}

TrainerConfig trainer_config_from_json(const nlohmann::json& j) {
  TrainerConfig c;
  c.iterations = j.value("iterations", c.iterations);
  c.step = j.value("step", c.step);
  c.seed = j.value("seed", c.seed);
  c.init_theta_range = j.value("init_theta_range", c.init_theta_range);
  c.init_noise = j.value("init_noise", c.init_noise);
  c.min_noise = j.value("min_noise", c.min_noise);
  c.normalize_objective = j.value("normalize_objective", c.normalize_objective);
  return c;
}

TrainingResult train(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const FeatureMapParams& init,
                     double init_noise, const TrainerConfig& cfg, const SimOptions& sim) {
  cfg.validate();
  init.validate();
  if (x.rows() < 2) throw std::invalid_argument("train: need at least 2 training inputs");
  TrainingResult r;
  r.params = init;
  double log_noise = std::log(std::max(init_noise, cfg.min_noise));
  r.noise = std::max(init_noise, cfg.min_noise);
  const double scale = cfg.normalize_objective ? 1.0 / static_cast<double>(y.size()) : 1.0;
  for (int it = 0; it <= cfg.iterations; ++it) {
    const bool last = it == cfg.iterations;
    const LikelihoodEval ev = likelihood_with_gradient(x, y, r.params, r.noise, sim, !last);
    if (!std::isfinite(ev.value) || (!last && (!ev.d_theta.allFinite() || !std::isfinite(ev.d_noise)))) {
      throw std::runtime_error("train: non-finite likelihood or gradient at iteration " + std::to_string(it) +
                               " (noise " + std::to_string(r.noise) + ")");
    }
    r.loss_trace.push_back(-ev.value);
    if (last) break;
    for (int i = 0; i < r.params.n_qubits; ++i) r.params.theta[static_cast<std::size_t>(i)] += cfg.step * scale * ev.d_theta(i);
    log_noise += cfg.step * scale * r.noise * ev.d_noise;
    log_noise = std::max(log_noise, std::log(cfg.min_noise));
    r.noise = std::exp(log_noise);
  }
  return r;
}

}  // namespace qforecast::qgp

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

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "qforecast/bench/metrics.hpp"
#include "qforecast/data.hpp"

namespace qforecast::baselines {

struct EsnConfig {
  int reservoir_size = 100;
  double spectral_radius = 0.9;
  double leak_rate = 0.3;
  double input_scale = 1.0;
  std::uint64_t seed = 3;
  double gamma = 1.0;
  double lambda = 1e-3;
  bool center_targets = true;

  void validate() const;
};

nlohmann::json to_json(const EsnConfig& c);
EsnConfig esn_config_from_json(const nlohmann::json& j);

struct EsnWeights {
  Eigen::MatrixXd w;     // recurrent, rescaled to the target spectral radius
  Eigen::VectorXd w_in;  // input weights
};

/// Dense uniform [-1, 1] weights for the reservoir of customer `stream`.
/// Throws std::runtime_error when the draw has zero spectral radius.
EsnWeights esn_weights(const EsnConfig& cfg, int stream = 0);

/// Largest eigenvalue modulus.
double spectral_radius(const Eigen::MatrixXd& w);

/// h_t = (1 - a) h_{t-1} + a tanh(W h_{t-1} + W_in x_t); row t holds h_t.
Eigen::MatrixXd esn_features(const Eigen::VectorXd& series, const EsnWeights& weights, double leak_rate,
                             const Eigen::VectorXd& h0 = {});
Eigen::MatrixXd esn_features(const Eigen::VectorXd& series, const EsnConfig& cfg, int stream = 0);

/// Forecasts of one window in normalized units.
struct BaselineForecast {
  Eigen::MatrixXd predictions;  // customers x horizon
  Eigen::MatrixXd truth;
  bench::Metrics metrics;
};

BaselineForecast esn_krr_forecast(const data::WindowSplit& window, const EsnConfig& cfg);

/// Linear model of coregionalization with one latent RBF kernel:
/// cov = B (x) k(X, X) + noise I, B = L L^T, outputs stacked output-major.
struct LmcConfig {
  double init_length_scale = 0.0;  // 0 uses the median-distance heuristic
  double init_noise = 0.01;
  int iterations = 100;
  double step = 0.05;
  bool optimize = true;
  bool center_targets = true;
  double min_noise = 1e-6;

  void validate() const;
};

nlohmann::json to_json(const LmcConfig& c);
LmcConfig lmc_config_from_json(const nlohmann::json& j);

struct LmcHyperparameters {
  Eigen::MatrixXd chol_b;  // lower-triangular factor of B
  double length_scale = 1.0;
  double noise = 0.01;

  Eigen::MatrixXd b() const { return chol_b * chol_b.transpose(); }
};

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb, double length_scale);

/// B (x) k(X, X) + noise I over N * D stacked outputs.
Eigen::MatrixXd lmc_covariance(const Eigen::MatrixXd& x, const LmcHyperparameters& hp);

struct LmcLikelihood {
  double value = 0.0;
  Eigen::MatrixXd d_chol_b;  // lower triangle only
  double d_log_length_scale = 0.0;
  double d_log_noise = 0.0;
};

LmcLikelihood lmc_log_likelihood(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const LmcHyperparameters& hp,
                                 bool with_gradient = true);

struct LmcModel {
  LmcHyperparameters hp;
  Eigen::MatrixXd x;
  Eigen::VectorXd alpha;  // cov^{-1} vec(Y)
  std::vector<double> loss_trace;
};

/// Gradient ascent with step halving on (L, log length scale, log noise) when cfg.optimize.
LmcModel lmc_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const LmcHyperparameters& init,
                 const LmcConfig& cfg);
/// Posterior mean, N* x D.
Eigen::MatrixXd lmc_predict(const LmcModel& model, const Eigen::MatrixXd& x_star);

BaselineForecast mogp_fit_predict(const data::WindowSplit& window, const LmcConfig& cfg);

/// Last training value repeated over the horizon. Throws on an empty window.
Eigen::MatrixXd naive_persistence(const data::WindowSplit& window);
BaselineForecast naive_forecast(const data::WindowSplit& window);

}  // namespace qforecast::baselines

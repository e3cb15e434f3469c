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

namespace qforecast::qgp {

/// Multi-output GP with a shared kernel and independent outputs.
struct GpModel {
  Eigen::MatrixXd k_xx;
  double noise = 0.0;
  Eigen::MatrixXd y;  // N x D
  Eigen::LLT<Eigen::MatrixXd> factor;  // of K + noise I
  Eigen::MatrixXd alpha;  // (K + noise I)^{-1} Y
};

/// Throws std::invalid_argument on shape errors, noise <= 0, asymmetry or a
/// minimum eigenvalue below -1e-9, and std::runtime_error when the
/// factorization fails.
GpModel gp_fit(const Eigen::MatrixXd& k_xx, const Eigen::MatrixXd& y, double noise);

struct GpPrediction {
  Eigen::MatrixXd mean;      // N* x D
  Eigen::VectorXd variance;  // per test input, shared by all outputs
  double max_clamp = 0.0;    // largest negative variance set to zero
};

GpPrediction gp_predict(const GpModel& model, const Eigen::MatrixXd& k_star_x, const Eigen::VectorXd& k_star_star_diag);

/// -1/2 sum_d y_d^T C^{-1} y_d - D/2 log det C - N D/2 log 2 pi with C = K + noise I.
double marginal_log_likelihood(const Eigen::MatrixXd& k_xx, const Eigen::MatrixXd& y, double noise);

}  // namespace qforecast::qgp

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

#include "qforecast/qgp/gp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qforecast/linalg.hpp"

namespace qforecast::qgp {
namespace {

Eigen::MatrixXd shifted(const Eigen::MatrixXd& k, double noise) {
  Eigen::MatrixXd c = k;
  c.diagonal().array() += noise;
  return c;
}

void check_shapes(const Eigen::MatrixXd& k, const Eigen::MatrixXd& y, double noise) {
  if (k.rows() != k.cols()) throw std::invalid_argument("GP kernel matrix is not square");
  if (k.rows() != y.rows()) {
    throw std::invalid_argument("GP targets have " + std::to_string(y.rows()) + " rows for " +
                                std::to_string(k.rows()) + " inputs");
  }
  if (!(noise > 0.0)) throw std::invalid_argument("GP noise variance must be > 0");
}

}  // namespace

GpModel gp_fit(const Eigen::MatrixXd& k_xx, const Eigen::MatrixXd& y, double noise) {
  check_shapes(k_xx, y, noise);
  if (k_xx.rows() == 0) throw std::invalid_argument("GP needs at least one training input");
  const double scale = std::max(1.0, k_xx.cwiseAbs().maxCoeff());
  if (linalg::asymmetry(k_xx) > 1e-9 * scale) throw std::invalid_argument("GP kernel matrix is not symmetric");
  const double min_eig = linalg::min_eigenvalue(k_xx);
  if (min_eig < -1e-9) {
    throw std::invalid_argument("GP kernel matrix is not PSD (min eigenvalue " + std::to_string(min_eig) + ")");
  }
  GpModel m;
  m.k_xx = k_xx;
  m.noise = noise;
  m.y = y;
  m.factor = linalg::cholesky(shifted(k_xx, noise), "gp_fit: K + noise I");
  m.alpha = m.factor.solve(y);
  return m;
}

GpPrediction gp_predict(const GpModel& model, const Eigen::MatrixXd& k_star_x, const Eigen::VectorXd& k_star_star_diag) {
  if (k_star_x.cols() != model.k_xx.rows()) throw std::invalid_argument("gp_predict: K_*X width mismatch");
  if (k_star_star_diag.size() != k_star_x.rows()) throw std::invalid_argument("gp_predict: K_** length mismatch");
  GpPrediction p;
  p.mean = k_star_x * model.alpha;
  const Eigen::MatrixXd v = model.factor.matrixL().solve(k_star_x.transpose());
  p.variance = k_star_star_diag - v.colwise().squaredNorm().transpose();
  for (Eigen::Index i = 0; i < p.variance.size(); ++i) {
    if (p.variance(i) < 0.0) {
      p.max_clamp = std::max(p.max_clamp, -p.variance(i));
      p.variance(i) = 0.0;
    }
  }
  return p;
}

double marginal_log_likelihood(const Eigen::MatrixXd& k_xx, const Eigen::MatrixXd& y, double noise) {
  check_shapes(k_xx, y, noise);
  const auto llt = linalg::cholesky(shifted(k_xx, noise), "marginal_log_likelihood: K + noise I");
  const double n = static_cast<double>(y.rows());
  const double d = static_cast<double>(y.cols());
  const double fit = (y.array() * llt.solve(y).array()).sum();
  return -0.5 * fit - 0.5 * d * linalg::log_det(llt) - 0.5 * n * d * std::log(2.0 * std::numbers::pi);
}

}  // namespace qforecast::qgp

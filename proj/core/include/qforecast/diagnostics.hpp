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
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "qforecast/qgp/feature_map.hpp"

namespace qforecast::diagnostics {

enum class KernelKind { Rbf, Laplacian, RationalQuadratic, Matern };
inline constexpr std::array<KernelKind, 4> kClassicalKinds{KernelKind::Rbf, KernelKind::Laplacian,
                                                           KernelKind::RationalQuadratic, KernelKind::Matern};
std::string to_string(KernelKind k);
KernelKind kernel_kind_from_string(std::string_view s);

struct ClassicalKernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double length_scale = 1.0;
  double rq_alpha = 1.0;
  double matern_nu = 1.5;  // 1.5 or 2.5

  void validate() const;
};

/// RBF exp(-|d|^2 / 2l^2), Laplacian exp(-|d|_1 / l),
/// rational quadratic (1 + |d|^2 / (2 alpha l^2))^-alpha, Matern 3/2 or 5/2.
Eigen::MatrixXd classical_kernel_matrix(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb,
                                        const ClassicalKernelSpec& spec);
Eigen::MatrixXd classical_kernel_matrix(const Eigen::MatrixXd& x, const ClassicalKernelSpec& spec);

/// Median pairwise Euclidean (or L1) distance between rows; 1 when all rows coincide.
double median_distance(const Eigen::MatrixXd& x, bool manhattan = false);

/// |<psi(x_i)|psi(x_j)>|^2 for the qgp feature map on the dense backend.
Eigen::MatrixXd fidelity_kernel_matrix(const Eigen::MatrixXd& x, const qgp::FeatureMapParams& params);

/// Inversion regularizer 1e-10 * trace / N. It is added only when the
/// smallest eigenvalue falls below it, so well-conditioned matrices are
/// inverted exactly.
double regularization_epsilon(const Eigen::MatrixXd& k);

struct GeometricDifference {
  double g = 0.0;
  double epsilon = 0.0;  // regularizer actually applied to K_C (0 when none)
};

/// sqrt(|| sqrt(K_Q) K_C^{-1} sqrt(K_Q) ||_2).
GeometricDifference geometric_difference(const Eigen::MatrixXd& k_c, const Eigen::MatrixXd& k_q);

struct Complexity {
  double kappa = 0.0;
  double epsilon = 0.0;
};

/// y^T K^{-1} y.
Complexity model_complexity(const Eigen::MatrixXd& k, const Eigen::VectorXd& y);

struct ScalingOptions {
  std::vector<int> sizes{8, 16, 32, 64};
  int repetitions = 10;
  std::uint64_t seed = 1;
  double matern_nu = 1.5;
  double rq_alpha = 1.0;
  double theta_range = 0.1;  // fidelity feature map angles drawn in [-range, range]
  std::size_t workers = 0;

  void validate() const;
};

nlohmann::json to_json(const ScalingOptions& o);
ScalingOptions scaling_options_from_json(const nlohmann::json& j);

/// One (N, repetition) cell. Index 0..3 follows kClassicalKinds; kappa[4] is the quantum kernel.
struct DiagnosticsRecord {
  int n = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::array<double, 4> g{};
  std::array<double, 5> kappa{};
  double max_epsilon = 0.0;
};

/// Samples N rows of (inputs, targets) without replacement per cell and compares
/// the fidelity kernel against every classical kernel.
std::vector<DiagnosticsRecord> scaling_study(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                             const ScalingOptions& options);

struct ScalingSummaryRow {
  int n = 0;
  std::array<double, 4> g_mean{};
  std::array<double, 4> g_std{};
  std::array<double, 5> kappa_mean{};
  std::array<double, 5> kappa_std{};
};

std::vector<ScalingSummaryRow> summarize(const std::vector<DiagnosticsRecord>& records);

}  // namespace qforecast::diagnostics

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

#include "qforecast/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qforecast/linalg.hpp"
#include "qforecast/parallel.hpp"
#include "qforecast/random.hpp"
#include "qforecast/sim/ops.hpp"

namespace qforecast::diagnostics {
namespace {

double kernel_value(double d2, double d1, const ClassicalKernelSpec& s) {
  const double l = s.length_scale;
  switch (s.kind) {
    case KernelKind::Rbf: return std::exp(-d2 / (2.0 * l * l));
    case KernelKind::Laplacian: return std::exp(-d1 / l);
    case KernelKind::RationalQuadratic: return std::pow(1.0 + d2 / (2.0 * s.rq_alpha * l * l), -s.rq_alpha);
    case KernelKind::Matern: {
      const double r = std::sqrt(d2) / l;
      if (s.matern_nu == 1.5) return (1.0 + std::sqrt(3.0) * r) * std::exp(-std::sqrt(3.0) * r);
      return (1.0 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) * std::exp(-std::sqrt(5.0) * r);
    }
  }
  return 0.0;
}

void check_square(const Eigen::MatrixXd& k, const char* what) {
  if (k.rows() != k.cols() || k.rows() == 0) throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
}

// Cholesky factor of K or of K + eps I when K is near-singular.
Eigen::LLT<Eigen::MatrixXd> regularized_factor(const Eigen::MatrixXd& k, double& applied) {
  const double eps = regularization_epsilon(k);
  applied = linalg::min_eigenvalue(k) < eps ? eps : 0.0;
  Eigen::MatrixXd a = k;
  if (applied > 0.0) a.diagonal().array() += applied;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    applied = std::max(eps, eps - linalg::min_eigenvalue(k));
    a = k;
    a.diagonal().array() += applied;
    llt.compute(a);
    if (llt.info() != Eigen::Success) throw std::runtime_error("kernel matrix could not be factorized after regularization");
  }
  return llt;
}

}  // namespace

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Rbf: return "rbf";
    case KernelKind::Laplacian: return "laplacian";
    case KernelKind::RationalQuadratic: return "rational_quadratic";
    case KernelKind::Matern: return "matern";
  }
  return "?";
}

KernelKind kernel_kind_from_string(std::string_view s) {
  for (auto k : kClassicalKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown kernel kind '" + std::string(s) + "'");
}

void ClassicalKernelSpec::validate() const {
  if (!(length_scale > 0.0)) throw std::invalid_argument("kernel length_scale must be > 0");
  if (!(rq_alpha > 0.0)) throw std::invalid_argument("rational quadratic alpha must be > 0");
  if (matern_nu != 1.5 && matern_nu != 2.5) throw std::invalid_argument("matern nu must be 1.5 or 2.5");
}

Eigen::MatrixXd classical_kernel_matrix(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb,
                                        const ClassicalKernelSpec& spec) {
  spec.validate();
  if (xa.rows() == 0 || xb.rows() == 0) throw std::invalid_argument("classical kernel: empty input set");
  if (xa.cols() != xb.cols()) throw std::invalid_argument("classical kernel: input dimensions differ");
  Eigen::MatrixXd k(xa.rows(), xb.rows());
  for (Eigen::Index i = 0; i < xa.rows(); ++i) {
    for (Eigen::Index j = 0; j < xb.rows(); ++j) {
      const Eigen::RowVectorXd d = xa.row(i) - xb.row(j);
      k(i, j) = kernel_value(d.squaredNorm(), d.lpNorm<1>(), spec);
    }
  }
  return k;
}

Eigen::MatrixXd classical_kernel_matrix(const Eigen::MatrixXd& x, const ClassicalKernelSpec& spec) {
  Eigen::MatrixXd k = classical_kernel_matrix(x, x, spec);
  return 0.5 * (k + k.transpose());
}

double median_distance(const Eigen::MatrixXd& x, bool manhattan) {
  std::vector<double> d;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) d.push_back(manhattan ? (x.row(i) - x.row(j)).lpNorm<1>() : (x.row(i) - x.row(j)).norm());
  }
  if (d.empty()) return 1.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  double m = *mid;
  if (d.size() % 2 == 0) m = 0.5 * (m + *std::max_element(d.begin(), mid));
  return m > 0.0 ? m : 1.0;
}

Eigen::MatrixXd fidelity_kernel_matrix(const Eigen::MatrixXd& x, const qgp::FeatureMapParams& params) {
  params.validate();
  if (params.n_qubits > sim::kMaxStateVectorQubits) throw std::invalid_argument("fidelity kernel: register too large");
  if (x.cols() != params.n_qubits) throw std::invalid_argument("fidelity kernel: input width does not match qubits");
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<Eigen::VectorXcd> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = x.row(static_cast<Eigen::Index>(i)).transpose();
    const auto circuit = qgp::build_feature_map(std::span<const double>(xi.data(), static_cast<std::size_t>(xi.size())), params);
    states[i] = sim::run_circuit(circuit, sim::QuantumState::zero(params.n_qubits)).amplitudes();
  }
  Eigen::MatrixXd k(x.rows(), x.rows());
  for (std::size_t i = 0; i < n; ++i) {
    k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = std::norm(states[i].dot(states[j]));
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return k;
}

double regularization_epsilon(const Eigen::MatrixXd& k) {
  check_square(k, "regularization_epsilon");
  return 1e-10 * std::abs(k.trace()) / static_cast<double>(k.rows());
}

GeometricDifference geometric_difference(const Eigen::MatrixXd& k_c, const Eigen::MatrixXd& k_q) {
  check_square(k_c, "geometric_difference");
  if (k_q.rows() != k_c.rows() || k_q.cols() != k_c.cols()) throw std::invalid_argument("geometric_difference: size mismatch");
  GeometricDifference out;
  const auto llt = regularized_factor(0.5 * (k_c + k_c.transpose()), out.epsilon);
  const Eigen::MatrixXd s = linalg::psd_sqrt(0.5 * (k_q + k_q.transpose()));
  Eigen::MatrixXd m = s * llt.solve(s);
  m = 0.5 * (m + m.transpose());
  out.g = std::sqrt(linalg::spectral_norm_symmetric(m));
  return out;
}

Complexity model_complexity(const Eigen::MatrixXd& k, const Eigen::VectorXd& y) {
  check_square(k, "model_complexity");
  if (y.size() != k.rows()) throw std::invalid_argument("model_complexity: target length mismatch");
  Complexity out;
  const auto llt = regularized_factor(0.5 * (k + k.transpose()), out.epsilon);
  out.kappa = y.dot(llt.solve(y));
  return out;
}

void ScalingOptions::validate() const {
  if (sizes.empty()) throw std::invalid_argument("diagnostics.sizes must not be empty");
  for (int n : sizes) {
    if (n < 2) throw std::invalid_argument("diagnostics.sizes entries must be >= 2");
  }
  if (repetitions < 1) throw std::invalid_argument("diagnostics.repetitions must be >= 1");
  if (matern_nu != 1.5 && matern_nu != 2.5) throw std::invalid_argument("diagnostics.matern_nu must be 1.5 or 2.5");
  if (!(rq_alpha > 0.0)) throw std::invalid_argument("diagnostics.rq_alpha must be > 0");
}

nlohmann::json to_json(const ScalingOptions& o) {
  return {{"sizes", o.sizes},         {"repetitions", o.repetitions}, {"seed", o.seed},
          {"matern_nu", o.matern_nu}, {"rq_alpha", o.rq_alpha},       {"theta_range", o.theta_range}};
}

ScalingOptions scaling_options_from_json(const nlohmann::json& j) {
  ScalingOptions o;
  o.sizes = j.value("sizes", o.sizes);
  o.repetitions = j.value("repetitions", o.repetitions);
  o.seed = j.value("seed", o.seed);
  o.matern_nu = j.value("matern_nu", o.matern_nu);
  o.rq_alpha = j.value("rq_alpha", o.rq_alpha);
  o.theta_range = j.value("theta_range", o.theta_range);
  return o;
}

std::vector<DiagnosticsRecord> scaling_study(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                             const ScalingOptions& options) {
  options.validate();
  if (inputs.rows() != targets.size()) throw std::invalid_argument("scaling_study: inputs and targets differ in length");
  for (int n : options.sizes) {
    if (n > inputs.rows()) {
      throw std::invalid_argument("scaling_study: size " + std::to_string(n) + " exceeds the " +
                                  std::to_string(inputs.rows()) + " available samples");
    }
  }
  const auto params = qgp::FeatureMapParams::random(static_cast<int>(inputs.cols()), derive_seed(options.seed, 0),
                                                    options.theta_range);
  const std::size_t reps = static_cast<std::size_t>(options.repetitions);
  std::vector<DiagnosticsRecord> records(options.sizes.size() * reps);
  parallel_for(records.size(), options.workers == 0 ? default_workers() : options.workers, [&](std::size_t cell) {
    const int n = options.sizes[cell / reps];
    DiagnosticsRecord& r = records[cell];
    r.n = n;
    r.repetition = static_cast<int>(cell % reps);
    r.seed = derive_seed(options.seed, 1 + cell);
    Rng rng(r.seed);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(inputs.rows()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      std::swap(idx[i], idx[i + rng.index(idx.size() - i)]);
    }
    idx.resize(static_cast<std::size_t>(n));
    std::sort(idx.begin(), idx.end());
    const Eigen::MatrixXd x = inputs(idx, Eigen::all);
    const Eigen::VectorXd y = targets(idx);

    const Eigen::MatrixXd k_q = fidelity_kernel_matrix(x, params);
    const double ell = median_distance(x);
    for (std::size_t c = 0; c < kClassicalKinds.size(); ++c) {
      ClassicalKernelSpec spec{kClassicalKinds[c], ell, options.rq_alpha, options.matern_nu};
      if (spec.kind == KernelKind::Laplacian) spec.length_scale = median_distance(x, true);
      const Eigen::MatrixXd k_c = classical_kernel_matrix(x, spec);
      const auto g = geometric_difference(k_c, k_q);
      const auto kappa = model_complexity(k_c, y);
      r.g[c] = g.g;
      r.kappa[c] = kappa.kappa;
      r.max_epsilon = std::max({r.max_epsilon, g.epsilon, kappa.epsilon});
    }
    const auto kq = model_complexity(k_q, y);
    r.kappa[4] = kq.kappa;
    r.max_epsilon = std::max(r.max_epsilon, kq.epsilon);
  });
  return records;
}

std::vector<ScalingSummaryRow> summarize(const std::vector<DiagnosticsRecord>& records) {
  std::vector<ScalingSummaryRow> rows;
  std::vector<int> sizes;
  for (const auto& r : records) {
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
  }
  for (int n : sizes) {
    ScalingSummaryRow row;
    row.n = n;
    std::vector<const DiagnosticsRecord*> cell;
    for (const auto& r : records) {
      if (r.n == n) cell.push_back(&r);
    }
    const double m = static_cast<double>(cell.size());
    auto stats = [&](auto get, double& mean, double& sd) {
      mean = 0.0;
      for (const auto* r : cell) mean += get(*r);
      mean /= m;
      double ss = 0.0;
      for (const auto* r : cell) ss += (get(*r) - mean) * (get(*r) - mean);
      sd = cell.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    };
    for (std::size_t c = 0; c < 4; ++c) stats([c](const DiagnosticsRecord& r) { return r.g[c]; }, row.g_mean[c], row.g_std[c]);
    for (std::size_t c = 0; c < 5; ++c) {
      stats([c](const DiagnosticsRecord& r) { return r.kappa[c]; }, row.kappa_mean[c], row.kappa_std[c]);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qforecast::diagnostics

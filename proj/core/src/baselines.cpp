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

#include "qforecast/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qforecast/diagnostics.hpp"
#include "qforecast/kqrc.hpp"
#include "qforecast/linalg.hpp"
#include "qforecast/random.hpp"

namespace qforecast::baselines {
namespace {

BaselineForecast finish(Eigen::MatrixXd predictions, const data::WindowSplit& window) {
  BaselineForecast f;
  f.predictions = std::move(predictions);
  f.truth = window.test;
  f.metrics = bench::compute_metrics(f.predictions, f.truth);
  return f;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb) {
  Eigen::MatrixXd d(xa.rows(), xb.rows());
  for (Eigen::Index i = 0; i < xa.rows(); ++i) {
    for (Eigen::Index j = 0; j < xb.rows(); ++j) d(i, j) = (xa.row(i) - xb.row(j)).squaredNorm();
  }
  return d;
}

}  // namespace

void EsnConfig::validate() const {
  if (reservoir_size < 1) throw std::invalid_argument("esn.reservoir_size must be >= 1");
  if (!(spectral_radius > 0.0)) throw std::invalid_argument("esn.spectral_radius must be > 0");
  if (!(leak_rate > 0.0 && leak_rate <= 1.0)) throw std::invalid_argument("esn.leak_rate must lie in (0, 1]");
  if (!(gamma > 0.0)) throw std::invalid_argument("esn.gamma must be > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("esn.lambda must be > 0");
}

nlohmann::json to_json(const EsnConfig& c) {
  return {{"reservoir_size", c.reservoir_size}, {"spectral_radius", c.spectral_radius},
          {"leak_rate", c.leak_rate},           {"input_scale", c.input_scale},
          {"seed", c.seed},                     {"gamma", c.gamma},
          {"lambda", c.lambda},                 {"center_targets", c.center_targets}};
}

EsnConfig esn_config_from_json(const nlohmann::json& j) {
  EsnConfig c;
  c.reservoir_size = j.value("reservoir_size", c.reservoir_size);
  c.spectral_radius = j.value("spectral_radius", c.spectral_radius);
  c.leak_rate = j.value("leak_rate", c.leak_rate);
  c.input_scale = j.value("input_scale", c.input_scale);
  c.seed = j.value("seed", c.seed);
  c.gamma = j.value("gamma", c.gamma);
  c.lambda = j.value("lambda", c.lambda);
  c.center_targets = j.value("center_targets", c.center_targets);
  return c;
}

double spectral_radius(const Eigen::MatrixXd& w) {
  if (w.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(w, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral_radius: eigenvalue solver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

EsnWeights esn_weights(const EsnConfig& cfg, int stream) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(stream)));
  const int n = cfg.reservoir_size;
  EsnWeights w;
  w.w.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) w.w(i, j) = rng.uniform(-1.0, 1.0);
  }
  w.w_in.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) w.w_in(i) = cfg.input_scale * rng.uniform(-1.0, 1.0);
  const double rho = spectral_radius(w.w);
  if (!(rho > 0.0)) throw std::runtime_error("esn_weights: recurrent matrix has zero spectral radius");
  w.w *= cfg.spectral_radius / rho;
  return w;
}

Eigen::MatrixXd esn_features(const Eigen::VectorXd& series, const EsnWeights& weights, double leak_rate,
                             const Eigen::VectorXd& h0) {
  const Eigen::Index n = weights.w.rows();
  if (series.size() < 1) throw std::invalid_argument("esn_features: empty series");
  Eigen::VectorXd h = h0.size() == 0 ? Eigen::VectorXd::Zero(n) : h0;
  if (h.size() != n) throw std::invalid_argument("esn_features: initial state has the wrong size");
  Eigen::MatrixXd rows(series.size(), n);
  for (Eigen::Index t = 0; t < series.size(); ++t) {
    const Eigen::VectorXd pre = weights.w * h + weights.w_in * series(t);
    h = (1.0 - leak_rate) * h + leak_rate * pre.array().tanh().matrix();
    rows.row(t) = h.transpose();
  }
  return rows;
}

Eigen::MatrixXd esn_features(const Eigen::VectorXd& series, const EsnConfig& cfg, int stream) {
  return esn_features(series, esn_weights(cfg, stream), cfg.leak_rate);
}

BaselineForecast esn_krr_forecast(const data::WindowSplit& window, const EsnConfig& cfg) {
  cfg.validate();
  Eigen::MatrixXd pred(window.train.rows(), window.horizon);
  for (Eigen::Index s = 0; s < window.train.rows(); ++s) {
    const Eigen::VectorXd series = window.train.row(s).transpose();
    const Eigen::MatrixXd f = esn_features(series, cfg, static_cast<int>(s));
    pred.row(s) = kqrc::direct_forecast(f, series, window.horizon, cfg.gamma, cfg.lambda, cfg.center_targets).transpose();
  }
  return finish(std::move(pred), window);
}

void LmcConfig::validate() const {
  if (init_length_scale < 0.0) throw std::invalid_argument("lmc.init_length_scale must be >= 0");
  if (!(init_noise > 0.0)) throw std::invalid_argument("lmc.init_noise must be > 0");
  if (iterations < 0) throw std::invalid_argument("lmc.iterations must be >= 0");
  if (!(step > 0.0)) throw std::invalid_argument("lmc.step must be > 0");
  if (!(min_noise > 0.0)) throw std::invalid_argument("lmc.min_noise must be > 0");
}

nlohmann::json to_json(const LmcConfig& c) {
  return {{"init_length_scale", c.init_length_scale}, {"init_noise", c.init_noise}, {"iterations", c.iterations},
          {"step", c.step}, {"optimize", c.optimize}, {"center_targets", c.center_targets}, {"min_noise", c.min_noise}};
}

LmcConfig lmc_config_from_json(const nlohmann::json& j) {
  LmcConfig c;
  c.init_length_scale = j.value("init_length_scale", c.init_length_scale);
  c.init_noise = j.value("init_noise", c.init_noise);
  c.iterations = j.value("iterations", c.iterations);
  c.step = j.value("step", c.step);
  c.optimize = j.value("optimize", c.optimize);
  c.center_targets = j.value("center_targets", c.center_targets);
  c.min_noise = j.value("min_noise", c.min_noise);
  return c;
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb, double length_scale) {
  if (!(length_scale > 0.0)) throw std::invalid_argument("rbf_gram: length scale must be > 0");
  return (-squared_distances(xa, xb).array() / (2.0 * length_scale * length_scale)).exp().matrix();
}

Eigen::MatrixXd lmc_covariance(const Eigen::MatrixXd& x, const LmcHyperparameters& hp) {
  if (!(hp.noise > 0.0)) throw std::invalid_argument("lmc: noise must be > 0");
  Eigen::MatrixXd c = kron(hp.b(), rbf_gram(x, x, hp.length_scale));
  c.diagonal().array() += hp.noise;
  return c;
}

LmcLikelihood lmc_log_likelihood(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const LmcHyperparameters& hp,
                                 bool with_gradient) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = y.cols();
  if (y.rows() != n) throw std::invalid_argument("lmc: inputs and targets differ in row count");
  if (hp.chol_b.rows() != d || hp.chol_b.cols() != d) throw std::invalid_argument("lmc: B factor has the wrong size");
  const Eigen::MatrixXd c = lmc_covariance(x, hp);
  const auto llt = linalg::cholesky(c, "lmc covariance");
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), y.size());
  const Eigen::VectorXd alpha = llt.solve(yv);
  LmcLikelihood out;
  out.value = -0.5 * yv.dot(alpha) - 0.5 * linalg::log_det(llt) -
              0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
  if (!with_gradient) return out;

  const Eigen::MatrixXd w = alpha * alpha.transpose() - llt.solve(Eigen::MatrixXd::Identity(c.rows(), c.cols()));
  const Eigen::MatrixXd dist = squared_distances(x, x);
  const Eigen::MatrixXd k = rbf_gram(x, x, hp.length_scale);
  const Eigen::MatrixXd dk = k.cwiseProduct(dist) / (hp.length_scale * hp.length_scale);
  const Eigen::MatrixXd b = hp.b();
  Eigen::MatrixXd s(d, d);
  double d_ell = 0.0;
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = 0; q < d; ++q) {
      const auto block = w.block(p * n, q * n, n, n);
      s(p, q) = 0.5 * block.cwiseProduct(k).sum();
      d_ell += 0.5 * b(p, q) * block.cwiseProduct(dk).sum();
    }
  }
  out.d_chol_b = ((s + s.transpose()) * hp.chol_b).triangularView<Eigen::Lower>();
  out.d_log_length_scale = d_ell;
  out.d_log_noise = 0.5 * hp.noise * w.trace();
  return out;
}

LmcModel lmc_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const LmcHyperparameters& init,
                 const LmcConfig& cfg) {
  cfg.validate();
  LmcModel m;
  m.hp = init;
  m.x = x;
  if (cfg.optimize) {
    const double scale = 1.0 / static_cast<double>(y.size());
    auto current = lmc_log_likelihood(x, y, m.hp);
    m.loss_trace.push_back(-current.value);
    double step = cfg.step;
    for (int it = 0; it < cfg.iterations; ++it) {
      bool accepted = false;
      for (int halving = 0; halving < 30 && !accepted; ++halving, step *= 0.5) {
        LmcHyperparameters trial = m.hp;
        trial.chol_b += step * scale * current.d_chol_b;
        trial.length_scale = std::exp(std::log(trial.length_scale) + step * scale * current.d_log_length_scale);
        trial.noise = std::max(cfg.min_noise, std::exp(std::log(trial.noise) + step * scale * current.d_log_noise));
        try {
          auto next = lmc_log_likelihood(x, y, trial);
          if (std::isfinite(next.value) && next.value >= current.value) {
            m.hp = trial;
            current = std::move(next);
            accepted = true;
          }
        } catch (const std::runtime_error&) {
        }
      }
      if (!accepted) break;
      step = std::min(cfg.step, 2.0 * step);
      m.loss_trace.push_back(-current.value);
    }
  }
  const auto llt = linalg::cholesky(lmc_covariance(x, m.hp), "lmc covariance");
  m.alpha = llt.solve(Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()));
  return m;
}

Eigen::MatrixXd lmc_predict(const LmcModel& model, const Eigen::MatrixXd& x_star) {
  const Eigen::MatrixXd k_star = kron(model.hp.b(), rbf_gram(x_star, model.x, model.hp.length_scale));
  const Eigen::VectorXd mean = k_star * model.alpha;
  return Eigen::Map<const Eigen::MatrixXd>(mean.data(), x_star.rows(), model.hp.chol_b.rows());
}

BaselineForecast mogp_fit_predict(const data::WindowSplit& window, const LmcConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd obs = window.train.transpose();
  const auto t_len = static_cast<int>(obs.rows());
  const auto d = obs.cols();
  const int horizon = window.horizon;
  if (t_len < horizon + 2) throw std::invalid_argument("mogp: window too short for the horizon");
  auto centered = [&](const Eigen::MatrixXd& y, Eigen::RowVectorXd& offset) {
    offset = cfg.center_targets ? Eigen::RowVectorXd(y.colwise().mean()) : Eigen::RowVectorXd::Zero(y.cols());
    return Eigen::MatrixXd(y.rowwise() - offset);
  };

  LmcHyperparameters init;
  init.chol_b = Eigen::MatrixXd::Identity(d, d);
  init.length_scale = cfg.init_length_scale > 0.0 ? cfg.init_length_scale : diagnostics::median_distance(obs);
  init.noise = cfg.init_noise;
  Eigen::RowVectorXd offset;
  const LmcModel trained =
      lmc_fit(obs.topRows(t_len - 1), centered(obs.bottomRows(t_len - 1), offset), init, cfg);

  LmcConfig fixed = cfg;
  fixed.optimize = false;
  Eigen::MatrixXd pred(d, horizon);
  for (int h = 1; h <= horizon; ++h) {
    const int rows = t_len - h;
    const LmcModel m = lmc_fit(obs.topRows(rows), centered(obs.middleRows(h, rows), offset), trained.hp, fixed);
    pred.col(h - 1) = (lmc_predict(m, obs.bottomRows(1)) + offset).transpose();
  }
  return finish(std::move(pred), window);
}

Eigen::MatrixXd naive_persistence(const data::WindowSplit& window) {
  if (window.train.cols() == 0 || window.train.rows() == 0) throw std::invalid_argument("naive persistence: empty window");
  return kqrc::persistence_forecast(window);
}

BaselineForecast naive_forecast(const data::WindowSplit& window) { return finish(naive_persistence(window), window); }

}  // namespace qforecast::baselines

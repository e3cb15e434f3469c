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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "../support/oracle.hpp"
#include "qforecast/baselines.hpp"
#include "qforecast/random.hpp"

namespace {

using namespace qforecast;
using namespace qforecast::baselines;

Eigen::MatrixXd random_matrix(int r, int c, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform();
  return m;
}

data::WindowSplit make_window(const Eigen::MatrixXd& full, int train_len, int horizon) {
  data::WindowSplit w;
  w.train_len = train_len;
  w.horizon = horizon;
  for (int s = 0; s < full.rows(); ++s) w.streams.push_back(s);
  w.train = full.leftCols(train_len);
  w.test = full.middleCols(train_len, horizon);
  w.train_raw = w.train;
  w.test_raw = w.test;
  return w;
}

TEST(BaselineEsn, SpectralRadiusRescaled) {
  EsnConfig cfg;
  cfg.reservoir_size = 60;
  for (double target : {0.5, 0.9}) {
    cfg.spectral_radius = target;
    const auto w = esn_weights(cfg, 2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(w.w.cast<std::complex<double>>(), false);
    EXPECT_NEAR(ces.eigenvalues().cwiseAbs().maxCoeff(), target, 1e-6);
    EXPECT_NEAR(spectral_radius(w.w), target, 1e-6);
    EXPECT_LE(w.w_in.cwiseAbs().maxCoeff(), cfg.input_scale);
  }
  EXPECT_NE(esn_weights(cfg, 0).w, esn_weights(cfg, 1).w);
  EXPECT_EQ(esn_weights(cfg, 1).w, esn_weights(cfg, 1).w);
  cfg.leak_rate = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(BaselineEsn, ZeroInputStaysAtRest) {
  EsnConfig cfg;
  const auto f = esn_features(Eigen::VectorXd::Zero(12), cfg);
  ASSERT_EQ(f.rows(), 12);
  ASSERT_EQ(f.cols(), cfg.reservoir_size);
  EXPECT_EQ(f.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(esn_features(Eigen::VectorXd(0), cfg), std::invalid_argument);
}

TEST(BaselineEsn, LeakyUpdateMatchesHandRecurrence) {
  EsnConfig cfg;
  cfg.reservoir_size = 20;
  const Eigen::VectorXd series = random_matrix(15, 1, 4).col(0);
  const auto w = esn_weights(cfg, 0);
  for (double leak : {1.0, 0.3}) {
    const auto f = esn_features(series, w, leak);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(20);
    for (int t = 0; t < 15; ++t) {
      Eigen::VectorXd next(20);
      for (int i = 0; i < 20; ++i) {
        double pre = w.w_in(i) * series(t);
        for (int j = 0; j < 20; ++j) pre += w.w(i, j) * h(j);
        next(i) = leak == 1.0 ? std::tanh(pre) : (1 - leak) * h(i) + leak * std::tanh(pre);
      }
      h = next;
      EXPECT_LT((f.row(t).transpose() - h).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
  cfg.reservoir_size = 20;
  EXPECT_EQ(esn_features(series, cfg), esn_features(series, cfg));
}

// Spectral radius 0.9 with the plain tanh update forgets h0 within 100 steps. Leaky integration slows
// contraction to roughly (1 - a) + a * 0.9 per step, so the default leak gets a longer horizon.
TEST(BaselineEsn, EchoStatePropertyForgetsInitialState) {
  EsnConfig cfg;
  const auto w = esn_weights(cfg, 0);
  const Eigen::VectorXd series = random_matrix(200, 1, 9).col(0);
  const Eigen::VectorXd h0 = (random_matrix(cfg.reservoir_size, 1, 10).col(0).array() * 2 - 1).matrix();
  const auto a = esn_features(series, w, 1.0);
  const auto b = esn_features(series, w, 1.0, h0);
  EXPECT_GT((a.row(0) - b.row(0)).norm(), 0.1);
  EXPECT_LT((a.row(99) - b.row(99)).norm(), 1e-6);

  const auto la = esn_features(series, w, cfg.leak_rate);
  const auto lb = esn_features(series, w, cfg.leak_rate, h0);
  EXPECT_LT((la.row(199) - lb.row(199)).norm(), 1e-6);
  EXPECT_THROW(esn_features(series, w, cfg.leak_rate, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST(BaselineEsn, ForecastShapeAndConstantSeries) {
  EsnConfig cfg;
  const auto w = make_window(Eigen::MatrixXd::Constant(3, 20, 0.45), 15, 5);
  const auto r = esn_krr_forecast(w, cfg);
  ASSERT_EQ(r.predictions.rows(), 3);
  ASSERT_EQ(r.predictions.cols(), 5);
  EXPECT_LT((r.predictions.array() - 0.45).abs().maxCoeff(), 1e-3);
  EXPECT_EQ(r.truth, w.test);
  const auto noisy = esn_krr_forecast(make_window(random_matrix(3, 20, 2), 15, 5), cfg);
  EXPECT_TRUE(noisy.predictions.allFinite());
}

TEST(BaselineLmc, RbfGramAndCovarianceLayout) {
  const auto x = random_matrix(6, 2, 1);
  const auto k = rbf_gram(x, x, 0.4);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      EXPECT_NEAR(k(i, j), std::exp(-(x.row(i) - x.row(j)).squaredNorm() / (2 * 0.16)), 1e-15);
    }
  }
  LmcHyperparameters hp;
  hp.chol_b = Eigen::Matrix2d{{1.0, 0.0}, {0.6, 0.5}};
  hp.length_scale = 0.4;
  hp.noise = 0.02;
  const auto c = lmc_covariance(x, hp);
  const Eigen::Matrix2d b = hp.b();
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      Eigen::MatrixXd expect = b(p, q) * k;
      if (p == q) expect.diagonal().array() += 0.02;
      EXPECT_LT((c.block(6 * p, 6 * q, 6, 6) - expect).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  EXPECT_GE(oracle::min_eig(c), -1e-9);
  EXPECT_THROW(rbf_gram(x, x, 0.0), std::invalid_argument);
  hp.noise = 0.0;
  EXPECT_THROW(lmc_covariance(x, hp), std::invalid_argument);
}

TEST(BaselineLmc, LikelihoodAndGradientMatchOracles) {
  const auto x = random_matrix(8, 3, 5);
  const Eigen::MatrixXd y = random_matrix(8, 2, 6).array() - 0.5;
  LmcHyperparameters hp;
  hp.chol_b = Eigen::Matrix2d{{0.9, 0.0}, {0.3, 0.7}};
  hp.length_scale = 0.6;
  hp.noise = 0.05;
  const auto ev = lmc_log_likelihood(x, y, hp);
  const Eigen::MatrixXd c = lmc_covariance(x, hp);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), y.size());
  const double expect = -0.5 * yv.dot(c.inverse() * yv) - 0.5 * std::log(c.determinant()) -
                        0.5 * 16 * std::log(2 * std::numbers::pi);
  EXPECT_NEAR(ev.value, expect, 1e-10);

  auto value = [&](const LmcHyperparameters& h) { return lmc_log_likelihood(x, y, h, false).value; };
  const double step = 1e-5;
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col <= r; ++col) {
      auto up = hp;
      auto dn = hp;
      up.chol_b(r, col) += step;
      dn.chol_b(r, col) -= step;
      EXPECT_NEAR(ev.d_chol_b(r, col), (value(up) - value(dn)) / (2 * step), 1e-6);
    }
  }
  EXPECT_EQ(ev.d_chol_b(0, 1), 0.0);
  auto up = hp;
  auto dn = hp;
  up.length_scale *= std::exp(step);
  dn.length_scale *= std::exp(-step);
  EXPECT_NEAR(ev.d_log_length_scale, (value(up) - value(dn)) / (2 * step), 1e-6);
  up = hp;
  dn = hp;
  up.noise *= std::exp(step);
  dn.noise *= std::exp(-step);
  EXPECT_NEAR(ev.d_log_noise, (value(up) - value(dn)) / (2 * step), 1e-6);
}

TEST(BaselineLmc, IdentityCoregionalizationIsIndependentGps) {
  const auto x = random_matrix(10, 3, 7);
  const Eigen::MatrixXd y = random_matrix(10, 3, 8);
  const auto xs = random_matrix(4, 3, 9);
  LmcHyperparameters hp;
  hp.chol_b = Eigen::Matrix3d::Identity();
  hp.length_scale = 0.5;
  hp.noise = 0.03;
  LmcConfig cfg;
  cfg.optimize = false;
  const auto m = lmc_fit(x, y, hp, cfg);
  EXPECT_TRUE(m.loss_trace.empty());
  const auto pred = lmc_predict(m, xs);
  ASSERT_EQ(pred.rows(), 4);
  ASSERT_EQ(pred.cols(), 3);
  const Eigen::MatrixXd k = rbf_gram(x, x, 0.5) + 0.03 * Eigen::MatrixXd::Identity(10, 10);
  const Eigen::MatrixXd expect = rbf_gram(xs, x, 0.5) * k.inverse() * y;
  EXPECT_LT((pred - expect).cwiseAbs().maxCoeff(), 1e-8);

  // one output is a single-output GP
  hp.chol_b = Eigen::MatrixXd::Constant(1, 1, 1.3);
  const auto m1 = lmc_fit(x, y.col(1), hp, cfg);
  const Eigen::MatrixXd k1 = 1.69 * rbf_gram(x, x, 0.5) + 0.03 * Eigen::MatrixXd::Identity(10, 10);
  const Eigen::VectorXd e1 = 1.69 * rbf_gram(xs, x, 0.5) * k1.inverse() * y.col(1);
  EXPECT_LT((lmc_predict(m1, xs).col(0) - e1).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(BaselineLmc, TrainingIncreasesLikelihoodDeterministically) {
  const auto x = random_matrix(14, 5, 1);
  const Eigen::MatrixXd y = x * random_matrix(5, 5, 2) / 5.0;
  LmcHyperparameters hp;
  hp.chol_b = Eigen::MatrixXd::Identity(5, 5);
  hp.length_scale = 0.5;
  hp.noise = 0.01;
  LmcConfig cfg;
  cfg.iterations = 30;
  const auto a = lmc_fit(x, y, hp, cfg);
  const auto b = lmc_fit(x, y, hp, cfg);
  ASSERT_GE(a.loss_trace.size(), 2u);
  for (std::size_t i = 1; i < a.loss_trace.size(); ++i) EXPECT_LE(a.loss_trace[i], a.loss_trace[i - 1]);
  EXPECT_EQ(a.loss_trace, b.loss_trace);
  EXPECT_GE(a.hp.noise, cfg.min_noise);
  EXPECT_GE(oracle::min_eig(a.hp.b()), -1e-12);
}

TEST(BaselineLmc, WindowForecastShape) {
  LmcConfig cfg;
  cfg.iterations = 10;
  const auto r = mogp_fit_predict(make_window(random_matrix(5, 20, 4), 15, 5), cfg);
  EXPECT_EQ(r.predictions.rows(), 5);
  EXPECT_EQ(r.predictions.cols(), 5);
  EXPECT_TRUE(r.predictions.allFinite());
  EXPECT_THROW(mogp_fit_predict(make_window(random_matrix(5, 10, 4), 6, 5), cfg), std::invalid_argument);
}

TEST(BaselineNaive, LastValueAndZeroErrorOnConstant) {
  Eigen::MatrixXd full = random_matrix(2, 20, 3);
  full(0, 14) = 0.7;
  const auto w = make_window(full, 15, 5);
  const auto p = naive_persistence(w);
  EXPECT_TRUE((p.row(0).array() == 0.7).all());
  EXPECT_TRUE((p.row(1).array() == full(1, 14)).all());
  const auto c = naive_forecast(make_window(Eigen::MatrixXd::Constant(3, 20, 0.2), 15, 5));
  EXPECT_EQ(c.metrics.mae, 0.0);
  data::WindowSplit empty;
  EXPECT_THROW(naive_persistence(empty), std::invalid_argument);
}

}  // namespace

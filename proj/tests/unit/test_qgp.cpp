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
#include "qforecast/qgp/feature_map.hpp"
#include "qforecast/qgp/forecast.hpp"
#include "qforecast/qgp/gp.hpp"
#include "qforecast/qgp/projected_kernel.hpp"
#include "qforecast/qgp/trainer.hpp"
#include "qforecast/random.hpp"
#include "qforecast/sim/ops.hpp"

namespace {

using namespace qforecast;
using namespace qforecast::qgp;
using sim::GateKind;

Eigen::MatrixXd random_inputs(int n, int q, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, q);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  return x;
}

std::vector<double> row(const Eigen::MatrixXd& m, Eigen::Index r) {
  std::vector<double> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(c)] = m(r, c);
  return v;
}

// Sum over adjacent pairs of Tr[rho_K rho'_K] from explicit partial traces of oracle statevectors.
double oracle_kernel(std::span<const double> a, std::span<const double> b, const FeatureMapParams& p) {
  const int n = p.n_qubits;
  const auto va = oracle::run_circuit(build_feature_map(a, p), oracle::zero_state(n));
  const auto vb = oracle::run_circuit(build_feature_map(b, p), oracle::zero_state(n));
  const Eigen::MatrixXcd ra = va * va.adjoint();
  const Eigen::MatrixXcd rb = vb * vb.adjoint();
  double k = 0.0;
  for (int q = 0; q + 1 < n; ++q) {
    const std::vector<int> keep{q, q + 1};
    k += oracle::trace_product(oracle::partial_trace(ra, n, keep), oracle::partial_trace(rb, n, keep));
  }
  return k;
}

Eigen::MatrixXd random_psd(int n, int rank, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(n, rank);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  return a * a.transpose() / rank;
}

TEST(QgpFeatureMap, LayerStructureForFiveQubits) {
  const auto p = FeatureMapParams::random(5, 3);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, 0.5};
  const auto c = build_feature_map(x, p);
  const std::vector<std::pair<GateKind, int>> layers{{GateKind::H, 5},    {GateKind::RY, 5}, {GateKind::CNOT, 4},
                                                     {GateKind::RX, 5},   {GateKind::CNOT, 4}, {GateKind::RY, 5}};
  std::size_t g = 0;
  for (const auto& [kind, count] : layers) {
    for (int i = 0; i < count; ++i, ++g) {
      ASSERT_LT(g, c.size());
      EXPECT_EQ(c.gates()[g].kind(), kind) << g;
      if (kind == GateKind::CNOT) {
        EXPECT_EQ(c.gates()[g].target(0), i);
        EXPECT_EQ(c.gates()[g].target(1), i + 1);
      }
    }
  }
  EXPECT_EQ(g, c.size());
  EXPECT_DOUBLE_EQ(c.gates()[7].angle(), std::numbers::pi * 0.3);
  EXPECT_DOUBLE_EQ(c.gates()[c.size() - 1].angle(), p.theta[4]);
  for (const auto& gate : c.gates()) {
    if (gate.arity() == 2) EXPECT_EQ(std::abs(gate.target(0) - gate.target(1)), 1);
  }
  EXPECT_THROW(build_feature_map(std::vector<double>{0.1}, p), std::invalid_argument);
}

TEST(QgpFeatureMap, ZeroAnglesLeaveHadamardAndCnotLayers) {
  const auto p = FeatureMapParams::zeros(4);
  const std::vector<double> x(4, 0.0);
  sim::Circuit ref(4);
  for (int q = 0; q < 4; ++q) ref.add(sim::Gate::h(q));
  for (int rep = 0; rep < 2; ++rep) {
    for (int q = 0; q < 3; ++q) ref.add(sim::Gate::cnot(q, q + 1));
  }
  EXPECT_LT((oracle::circuit_unitary(build_feature_map(x, p)) - oracle::circuit_unitary(ref)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(QgpFeatureMap, ParamsValidationJsonAndTiling) {
  auto p = FeatureMapParams::zeros(3);
  p.theta.pop_back();
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(FeatureMapParams::zeros(1).validate(), std::invalid_argument);
  const auto r = FeatureMapParams::random(5, 9, 0.1);
  for (double t : r.theta) EXPECT_LE(std::abs(t), 0.1);
  EXPECT_EQ(FeatureMapParams::random(5, 9).theta, r.theta);
  const auto tiled = FeatureMapParams::tiled(r, 12);
  for (int q = 0; q < 12; ++q) EXPECT_EQ(tiled.theta[static_cast<std::size_t>(q)], r.theta[static_cast<std::size_t>(q % 5)]);
  EXPECT_EQ(feature_map_params_from_json(to_json(r)).theta, r.theta);
}

TEST(QgpSubsets, AdjacentPairs) {
  EXPECT_EQ(coupled_subsets(2), (std::vector<std::vector<int>>{{0, 1}}));
  EXPECT_EQ(coupled_subsets(5).size(), 4u);
  const auto big = coupled_subsets(100);
  ASSERT_EQ(big.size(), 99u);
  EXPECT_EQ(big[98], (std::vector<int>{98, 99}));
  EXPECT_EQ(coupled_subsets(4, 1).size(), 4u);
  EXPECT_THROW(coupled_subsets(1), std::invalid_argument);
}

TEST(QgpTable, IdentityBoundsAndPurity) {
  const auto p = FeatureMapParams::random(5, 2);
  const auto x = random_inputs(4, 5, 8);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto xi = row(x, i);
    const auto t = expectation_table(xi, p);
    ASSERT_EQ(t.values.rows(), 4);
    ASSERT_EQ(t.values.cols(), 16);
    const auto v = oracle::run_circuit(build_feature_map(xi, p), oracle::zero_state(5));
    for (Eigen::Index k = 0; k < 4; ++k) {
      EXPECT_EQ(t.values(k, 0), 1.0);
      EXPECT_LE(t.values.row(k).cwiseAbs().maxCoeff(), 1.0 + 1e-10);
      const std::vector<int> keep{static_cast<int>(k), static_cast<int>(k) + 1};
      const Eigen::MatrixXcd rho = oracle::partial_trace(v * v.adjoint(), 5, keep);
      const double purity = oracle::trace_product(rho, rho);
      EXPECT_NEAR(0.25 * t.values.row(k).squaredNorm(), purity, 1e-12);
      EXPECT_GT(purity, 0.0);
      EXPECT_LE(purity, 1.0 + 1e-12);
      // column p = p0 + 4 p1 with p0 on the first qubit of the pair
      for (int pc = 0; pc < 16; ++pc) {
        const Eigen::MatrixXcd op = oracle::kron(oracle::pauli(pc / 4), oracle::pauli(pc % 4));
        EXPECT_NEAR(t.values(k, pc), oracle::trace_product(op, rho), 1e-12);
      }
    }
  }
}

TEST(QgpTable, DenseAndMpsAgree) {
  for (int n : {3, 8, 12}) {
    const auto p = FeatureMapParams::random(n, static_cast<std::uint64_t>(n));
    const auto x = random_inputs(3, n, 4);
    SimOptions mps;
    mps.backend = Backend::Mps;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const auto d = expectation_table(row(x, i), p);
      const auto m = expectation_table(row(x, i), p, mps);
      EXPECT_LT((d.values - m.values).cwiseAbs().maxCoeff(), 1e-10) << n;
    }
  }
}

TEST(QgpKernel, EntryMatchesPartialTraceOracle) {
  for (int n : {2, 4, 7, 10}) {
    const auto p = FeatureMapParams::random(n, static_cast<std::uint64_t>(n) + 1);
    const auto x = random_inputs(4, n, static_cast<std::uint64_t>(n));
    const auto tables = expectation_tables(x, p);
    for (Eigen::Index a = 0; a < x.rows(); ++a) {
      for (Eigen::Index b = a; b < x.rows(); ++b) {
        const double k = projected_kernel_entry(tables[static_cast<std::size_t>(a)], tables[static_cast<std::size_t>(b)]);
        EXPECT_NEAR(k, oracle_kernel(row(x, a), row(x, b), p), 1e-10);
        EXPECT_EQ(k, projected_kernel_entry(tables[static_cast<std::size_t>(b)], tables[static_cast<std::size_t>(a)]));
      }
      // self entry is the summed pair purity, bounded by the pair count
      const double self = projected_kernel_entry(tables[static_cast<std::size_t>(a)], tables[static_cast<std::size_t>(a)]);
      EXPECT_LE(self, n - 1 + 1e-12);
    }
  }
}

TEST(QgpKernel, MaximallyMixedPairsLeaveOnlyIdentityTerm) {
  // Bell pairs on (0,1) and (2,3): the pair (1,2) is maximally mixed, the others pure.
  sim::Circuit c(4);
  c.add(sim::Gate::h(0)).add(sim::Gate::cnot(0, 1)).add(sim::Gate::h(2)).add(sim::Gate::cnot(2, 3));
  const Eigen::VectorXcd v = oracle::circuit_unitary(c) * oracle::zero_state(4);
  const Eigen::MatrixXcd rho = v * v.adjoint();
  const std::vector<int> mid{1, 2};
  const Eigen::MatrixXcd r12 = oracle::partial_trace(rho, 4, mid);
  EXPECT_NEAR(oracle::trace_product(r12, r12), 0.25, 1e-15);
  const auto state = sim::run_circuit(c, sim::QuantumState::zero(4));
  ExpectationTable t;
  t.subsets = {{1, 2}};
  t.values.resize(1, 16);
  for (int pc = 0; pc < 16; ++pc) {
    sim::PauliString ps;
    ps.set(1, static_cast<sim::Pauli>(pc % 4)).set(2, static_cast<sim::Pauli>(pc / 4));
    t.values(0, pc) = sim::pauli_expectation(state, ps);
  }
  EXPECT_NEAR(t.values.row(0).tail(15).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_NEAR(projected_kernel_entry(t, t), 0.25, 1e-15);
}

TEST(QgpKernel, MatrixShapesPsdAndExecutionCount) {
  const auto p = FeatureMapParams::random(5, 12);
  const auto x = random_inputs(50, 5, 13);
  ExecutionCounter counter;
  const auto tables = expectation_tables(x, p, {}, &counter);
  EXPECT_EQ(counter.tables.load(), 50u);
  EXPECT_EQ(counter.basis_settings.load(), 50u * 4u * 9u);
  const auto k = projected_kernel_matrix(tables);
  EXPECT_EQ(counter.tables.load(), 50u);
  ASSERT_EQ(k.rows(), 50);
  EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GE(oracle::min_eig(k), -1e-9);

  const std::span<const ExpectationTable> all(tables);
  const auto one = projected_kernel_matrix(all.first(1));
  ASSERT_EQ(one.rows(), 1);
  EXPECT_NEAR(one(0, 0), projected_kernel_entry(tables[0], tables[0]), 1e-15);
  const auto cross = projected_kernel_matrix(all.subspan(40), all.first(40));
  ASSERT_EQ(cross.rows(), 10);
  ASSERT_EQ(cross.cols(), 40);
  EXPECT_LT((cross - k.block(40, 0, 10, 40)).cwiseAbs().maxCoeff(), 1e-14);

  // Gram equals w E E^T with the stacked expectation rows
  const auto e = expectation_matrix(tables);
  EXPECT_LT((0.25 * e * e.transpose() - k).cwiseAbs().maxCoeff(), 1e-12);

  auto other = FeatureMapParams::random(4, 1);
  const auto t4 = expectation_table(row(random_inputs(1, 4, 1), 0), other);
  EXPECT_THROW(projected_kernel_entry(tables[0], t4), std::invalid_argument);
}

TEST(QgpGp, DiagonalAlgebraAndSharedFactorization) {
  Eigen::MatrixXd y(3, 2);
  y << 1, 2, -1, 0.5, 3, -2;
  const double s2 = 1e-6;
  const auto m = gp_fit(Eigen::Matrix3d::Identity(), y, s2);
  const auto p = gp_predict(m, Eigen::Matrix3d::Identity(), Eigen::Vector3d::Ones());
  EXPECT_LT((p.mean - y / (1 + s2)).cwiseAbs().maxCoeff(), 1e-14);
  ASSERT_EQ(p.mean.cols(), 2);
  ASSERT_EQ(p.variance.size(), 3);

  const auto k = random_psd(12, 20, 4);
  Eigen::MatrixXd yy = random_inputs(12, 3, 5);
  const auto fit = gp_fit(k, yy, 0.01);
  const Eigen::MatrixXd c = k + 0.01 * Eigen::MatrixXd::Identity(12, 12);
  const Eigen::MatrixXd l = fit.factor.matrixL();
  EXPECT_LE((l * l.transpose() - c).norm(), 1e-8 * c.norm());
  EXPECT_LT((fit.alpha - c.inverse() * yy).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(QgpGp, RejectsBadInputs) {
  EXPECT_THROW(gp_fit(Eigen::MatrixXd::Identity(3, 2), Eigen::MatrixXd::Zero(3, 1), 0.1), std::invalid_argument);
  EXPECT_THROW(gp_fit(Eigen::Matrix3d::Identity(), Eigen::MatrixXd::Zero(2, 1), 0.1), std::invalid_argument);
  EXPECT_THROW(gp_fit(Eigen::Matrix3d::Identity(), Eigen::MatrixXd::Zero(3, 1), 0.0), std::invalid_argument);
  EXPECT_THROW(gp_fit(-Eigen::Matrix3d::Identity(), Eigen::MatrixXd::Zero(3, 1), 0.1), std::invalid_argument);
  const auto m = gp_fit(Eigen::Matrix3d::Identity(), Eigen::MatrixXd::Zero(3, 1), 0.1);
  EXPECT_THROW(gp_predict(m, Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Ones(1)), std::invalid_argument);
  EXPECT_THROW(gp_predict(m, Eigen::MatrixXd::Zero(1, 3), Eigen::VectorXd::Ones(2)), std::invalid_argument);
}

TEST(QgpGp, InterpolationPriorReversionAndContraction) {
  const auto p = FeatureMapParams::random(4, 6);
  const auto x = random_inputs(10, 4, 7);
  const auto k = projected_kernel_matrix(expectation_tables(x, p));
  const Eigen::MatrixXd y = random_inputs(10, 4, 9);
  const auto m = gp_fit(k, y, 1e-8);
  const auto at_train = gp_predict(m, k.topRows(3), k.diagonal().head(3));
  EXPECT_LT((at_train.mean - y.topRows(3)).cwiseAbs().maxCoeff(), 1e-3);

  const auto far = gp_predict(m, Eigen::MatrixXd::Zero(2, 10), Eigen::Vector2d(1.5, 2.5));
  EXPECT_EQ(far.mean.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_DOUBLE_EQ(far.variance(0), 1.5);
  EXPECT_DOUBLE_EQ(far.variance(1), 2.5);

  const auto xs = random_inputs(6, 4, 21);
  const auto ts = expectation_tables(xs, p);
  const auto tt = expectation_tables(x, p);
  const auto ksx = projected_kernel_matrix(ts, tt);
  const Eigen::VectorXd kss = projected_kernel_matrix(ts).diagonal();
  const auto pred = gp_predict(gp_fit(k, y, 0.05), ksx, kss);
  EXPECT_GE(pred.variance.minCoeff(), 0.0);
  EXPECT_LE(pred.max_clamp, 1e-9);
  EXPECT_TRUE(((pred.variance - kss).array() <= 1e-9).all());
}

double oracle_mll(const Eigen::MatrixXd& k, const Eigen::MatrixXd& y, double noise) {
  const Eigen::MatrixXd c = k + noise * Eigen::MatrixXd::Identity(k.rows(), k.cols());
  const double n = static_cast<double>(y.rows());
  const double d = static_cast<double>(y.cols());
  return -0.5 * (y.transpose() * c.inverse() * y).trace() - 0.5 * d * std::log(c.determinant()) -
         0.5 * n * d * std::log(2 * std::numbers::pi);
}

TEST(QgpLikelihood, ClosedFormAndDenseOracle) {
  const Eigen::MatrixXd y0 = Eigen::MatrixXd::Zero(4, 2);
  EXPECT_NEAR(marginal_log_likelihood(Eigen::MatrixXd::Zero(4, 4), y0, 1.0), -4.0 * std::log(2 * std::numbers::pi),
              1e-12);
  for (int n : {3, 10, 20}) {
    const auto k = random_psd(n, n + 2, static_cast<std::uint64_t>(n));
    const Eigen::MatrixXd y = random_inputs(n, 3, 2) .array() - 0.5;
    EXPECT_NEAR(marginal_log_likelihood(k, y, 0.1), oracle_mll(k, y, 0.1), 1e-8);
  }
}

TEST(QgpLikelihood, FitTermShrinksAsNoiseGrows) {
  const auto k = random_psd(8, 4, 3);
  const Eigen::MatrixXd y = random_inputs(8, 1, 4);
  double prev = std::numeric_limits<double>::infinity();
  for (double s2 : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    const double logdet = (es.eigenvalues().array() + s2).log().sum();
    const double fit = marginal_log_likelihood(k, y, s2) + 0.5 * logdet + 4.0 * std::log(2 * std::numbers::pi);
    EXPECT_LT(std::abs(fit), prev);
    prev = std::abs(fit);
  }
}

TEST(QgpGradient, ParameterShiftRuleOnSingleQubit) {
  for (double theta : {-2.0, -0.3, 0.0, 0.7, 2.5}) {
    auto z = [](double t) {
      const auto s = sim::apply_gate(sim::QuantumState::zero(1), sim::Gate::ry(0, t));
      return sim::pauli_expectation(s, sim::PauliString{{0, sim::Pauli::Z}});
    };
    EXPECT_NEAR(z(theta), std::cos(theta), 1e-15);
    EXPECT_NEAR(0.5 * (z(theta + std::numbers::pi / 2) - z(theta - std::numbers::pi / 2)), -std::sin(theta), 1e-14);
  }
}

TEST(QgpGradient, MatchesCentralFiniteDifferences) {
  struct Case {
    int nq, n, d;
  };
  for (const Case cs : {Case{2, 5, 1}, Case{4, 8, 2}, Case{6, 10, 3}}) {
    const auto p = FeatureMapParams::random(cs.nq, static_cast<std::uint64_t>(cs.nq), 0.8);
    const auto x = random_inputs(cs.n, cs.nq, 31);
    const Eigen::MatrixXd y = random_inputs(cs.n, cs.d, 32).array() - 0.5;
    // central differences at step 1e-4 carry an h^2 f'''/6 error that grows like 1/noise^4
    const double noise = 0.1;
    const auto ev = likelihood_with_gradient(x, y, p, noise);
    EXPECT_NEAR(ev.value, oracle_mll(projected_kernel_matrix(expectation_tables(x, p)), y, noise), 1e-8);
    const double h = 1e-4;
    for (int i = 0; i < cs.nq; ++i) {
      auto up = p;
      auto dn = p;
      up.theta[static_cast<std::size_t>(i)] += h;
      dn.theta[static_cast<std::size_t>(i)] -= h;
      const double fd = (likelihood_with_gradient(x, y, up, noise, {}, false).value -
                         likelihood_with_gradient(x, y, dn, noise, {}, false).value) /
                        (2 * h);
      EXPECT_NEAR(ev.d_theta(i), fd, 1e-6) << cs.nq << " " << i;
    }
    const double fd_noise = (likelihood_with_gradient(x, y, p, noise + h, {}, false).value -
                             likelihood_with_gradient(x, y, p, noise - h, {}, false).value) /
                            (2 * h);
    EXPECT_NEAR(ev.d_noise, fd_noise, 1e-6);
  }
}

TEST(QgpGradient, ZeroTargetsLeaveOnlyTheLogDetTerm) {
  const auto p = FeatureMapParams::random(3, 2, 0.5);
  const auto x = random_inputs(6, 3, 2);
  const Eigen::MatrixXd y = Eigen::MatrixXd::Zero(6, 2);
  const auto k = projected_kernel_matrix(expectation_tables(x, p));
  const Eigen::MatrixXd c = k + 0.1 * Eigen::MatrixXd::Identity(6, 6);
  const auto ev = likelihood_with_gradient(x, y, p, 0.1);
  EXPECT_NEAR(ev.d_noise, -0.5 * 2 * c.inverse().trace(), 1e-10);
}

TEST(QgpTrain, SmallStepDoesNotIncreaseLoss) {
  const auto x = random_inputs(4, 2, 3);
  const Eigen::MatrixXd y = random_inputs(4, 2, 4).array() - 0.5;
  TrainerConfig cfg;
  cfg.iterations = 20;
  cfg.step = 1e-3;
  const auto r = train(x, y, FeatureMapParams::random(2, 5), 0.01, cfg);
  ASSERT_EQ(r.loss_trace.size(), 21u);
  EXPECT_LE(r.loss_trace.back(), r.loss_trace.front());
  for (std::size_t i = 1; i < r.loss_trace.size(); ++i) EXPECT_LE(r.loss_trace[i], r.loss_trace[i - 1] + 1e-12);
}

TEST(QgpTrain, ZeroIterationsAndDeterminism) {
  const auto x = random_inputs(6, 3, 3);
  const Eigen::MatrixXd y = random_inputs(6, 3, 4);
  const auto init = FeatureMapParams::random(3, 5);
  TrainerConfig cfg;
  cfg.iterations = 0;
  const auto r0 = train(x, y, init, 0.01, cfg);
  EXPECT_EQ(r0.params.theta, init.theta);
  EXPECT_EQ(r0.noise, 0.01);
  EXPECT_EQ(r0.loss_trace.size(), 1u);

  cfg.iterations = 10;
  const auto a = train(x, y, init, 0.01, cfg);
  const auto b = train(x, y, init, 0.01, cfg);
  EXPECT_EQ(a.loss_trace, b.loss_trace);
  EXPECT_EQ(a.params.theta, b.params.theta);
  EXPECT_GE(a.noise, cfg.min_noise);
  EXPECT_THROW(train(x.topRows(1), y.topRows(1), init, 0.01, cfg), std::invalid_argument);
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

TEST(QgpForecast, FiveCustomerShape) {
  QgpConfig cfg;
  cfg.trainer.iterations = 5;
  const auto w = make_window(random_inputs(5, 20, 3), 15, 5);
  const auto r = qgp_forecast(w, cfg);
  EXPECT_EQ(r.predictions.rows(), 5);
  EXPECT_EQ(r.predictions.cols(), 5);
  EXPECT_EQ(r.variance.size(), 5);
  EXPECT_EQ(r.training.loss_trace.size(), 6u);
  EXPECT_TRUE(r.predictions.allFinite());
  EXPECT_GE(r.variance.minCoeff(), 0.0);
  EXPECT_LE(r.max_variance_clamp, 1e-9);
}

TEST(QgpForecast, ConstantDatasetStaysWithinTwoSigma) {
  QgpConfig cfg;
  cfg.trainer.iterations = 5;
  const auto w = make_window(Eigen::MatrixXd::Constant(5, 20, 0.4), 15, 5);
  const auto r = qgp_forecast(w, cfg);
  for (int h = 0; h < 5; ++h) {
    const double band = 2.0 * std::sqrt(r.variance(h)) + 1e-12;
    EXPECT_LE((r.predictions.col(h).array() - 0.4).abs().maxCoeff(), band);
  }
}

TEST(QgpForecast, HundredCustomersOnMps) {
  QgpConfig cfg;
  cfg.train = false;
  cfg.theta = {0.05, -0.02, 0.08, 0.01, -0.07};
  cfg.sim.backend = Backend::Mps;
  const auto w = make_window(random_inputs(100, 20, 5), 15, 5);
  const auto r = qgp_forecast(w, cfg);
  EXPECT_EQ(r.predictions.rows(), 100);
  EXPECT_EQ(r.predictions.cols(), 5);
  EXPECT_TRUE(r.predictions.allFinite());
  EXPECT_TRUE(std::isfinite(r.metrics.mae));
}

}  // namespace

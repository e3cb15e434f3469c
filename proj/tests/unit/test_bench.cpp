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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qforecast/bench/config.hpp"
#include "qforecast/bench/experiment.hpp"
#include "qforecast/bench/metrics.hpp"
#include "qforecast/bench/report.hpp"
#include "qforecast/random.hpp"

namespace {

using namespace qforecast;
using namespace qforecast::bench;
using nlohmann::json;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

const std::string* find_table(const std::vector<std::pair<std::string, std::string>>& tables, const std::string& name) {
  for (const auto& [n, text] : tables) {
    if (n == name) return &text;
  }
  return nullptr;
}

TEST(BenchMetrics, ClosedFormsAndHandOracle) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Constant(2, 3, 0.4);
  auto m = compute_metrics(a, a);
  EXPECT_EQ(m.mae, 0.0);
  EXPECT_EQ(m.mse, 0.0);
  Eigen::MatrixXd p(1, 2), t(1, 2);
  p << 1.0, -1.0;
  t << 0.0, 0.0;
  m = compute_metrics(p, t);
  EXPECT_EQ(m.mae, 1.0);
  EXPECT_EQ(m.mse, 1.0);

  Rng rng(4);
  Eigen::MatrixXd pr(3, 5), tr(3, 5);
  for (Eigen::Index i = 0; i < 15; ++i) {
    pr.data()[i] = rng.normal();
    tr.data()[i] = rng.normal();
  }
  m = compute_metrics(pr, tr);
  double sa = 0.0, ss = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (int h = 0; h < 5; ++h) {
      const double e = pr(c, h) - tr(c, h);
      sa += std::abs(e);
      ss += e * e;
    }
  }
  EXPECT_NEAR(m.mae, sa / 15, 1e-12);
  EXPECT_NEAR(m.mse, ss / 15, 1e-12);
  for (int h = 0; h < 5; ++h) {
    double col = 0.0;
    for (int c = 0; c < 3; ++c) col += std::abs(pr(c, h) - tr(c, h));
    EXPECT_NEAR(m.mae_per_horizon(h), col / 3, 1e-12);
  }
  for (int c = 0; c < 3; ++c) {
    double row = 0.0;
    for (int h = 0; h < 5; ++h) row += std::pow(pr(c, h) - tr(c, h), 2);
    EXPECT_NEAR(m.mse_per_customer(c), row / 5, 1e-12);
  }
  EXPECT_THROW(compute_metrics(pr, tr.leftCols(4)), std::invalid_argument);
}

TEST(BenchTiers, TableRowsAndBoundaries) {
  EXPECT_EQ(classify_tier(0.082), Tier::Low);
  EXPECT_EQ(classify_tier(0.229), Tier::Medium);
  EXPECT_EQ(classify_tier(0.664), Tier::High);
  EXPECT_EQ(classify_tier(0.15), Tier::Medium);
  EXPECT_EQ(classify_tier(0.35), Tier::Medium);
  const auto all_boundary = tier_classify({0.15, 0.15, 0.15}, {0.1, 0.1, 0.1});
  EXPECT_EQ(all_boundary[1].share_percent, 100.0);
  const auto rows = tier_classify({0.1, 0.2, 0.3, 0.5}, {0.01, 0.04, 0.09, 0.25});
  EXPECT_EQ(rows[0].count, 1);
  EXPECT_EQ(rows[1].count, 2);
  EXPECT_EQ(rows[2].count, 1);
  EXPECT_NEAR(rows[1].avg_mae, 0.25, 1e-15);
  EXPECT_NEAR(rows[1].avg_mse, 0.065, 1e-15);
  EXPECT_NEAR(rows[0].share_percent + rows[1].share_percent + rows[2].share_percent, 100.0, 1e-12);
}

TEST(BenchConfig, DefaultsValidateAndRoundTrip) {
  for (auto kind : {ExperimentKind::KqrcTriplet, ExperimentKind::QgpGroup, ExperimentKind::QgpUtility,
                    ExperimentKind::QubitScaling, ExperimentKind::Diagnostics, ExperimentKind::Baselines}) {
    const auto cfg = default_config(kind);
    EXPECT_NO_THROW(validate(cfg)) << to_string(kind);
    EXPECT_EQ(experiment_kind_from_string(to_string(kind)), kind);
    const auto back = parse_config(to_json(cfg));
    EXPECT_EQ(to_json(back), to_json(cfg)) << to_string(kind);
  }
}

TEST(BenchConfig, ErrorsCarryFieldPaths) {
  auto path_of = [](const json& j) -> std::string {
    try {
      parse_config(j);
    } catch (const ConfigError& e) {
      return e.path();
    }
    return "<none>";
  };
  EXPECT_EQ(path_of(json::array()), "$");
  EXPECT_EQ(path_of(json{{"name", "x"}}), "$.experiment");
  EXPECT_EQ(path_of(json{{"experiment", "teleport"}}), "$.experiment");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"colour", 1}}), "$.colour");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"kqrc", {{"gamma", "big"}}}}), "$.kqrc.gamma");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"kqrc", {{"gamma", -1.0}}}}).rfind("$.kqrc", 0), 0u);
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"subset", {{"name", "group_q"}}}}), "$.subset.name");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"models", {"naive"}}}), "$.models");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"models", {"naive", "kqrc", "oracle"}}}).rfind("$.models", 0),
            0u);
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"dataset", {{"source", "csv"}}}}), "$.dataset.path");
  EXPECT_EQ(path_of(json{{"experiment", "kqrc_triplet"}, {"seed", -3}}), "$.seed");
}

TEST(BenchConfig, Overrides) {
  auto cfg = default_config(ExperimentKind::QgpGroup);
  apply_overrides(cfg, 42, std::string("elsewhere"), std::string("mps"));
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.output, "elsewhere");
  EXPECT_EQ(cfg.qgp.sim.backend, qgp::Backend::Mps);
  EXPECT_THROW(apply_overrides(cfg, std::nullopt, std::nullopt, std::string("gpu")), ConfigError);
}

ExperimentConfig small(ExperimentKind kind, int windows = 2) {
  auto cfg = default_config(kind);
  cfg.windows.max_windows = windows;
  return cfg;
}

TEST(BenchRun, SharedWindowsAcrossModelsAndReports) {
  const auto q = run_experiment(small(ExperimentKind::KqrcTriplet));
  auto bcfg = small(ExperimentKind::Baselines);
  bcfg.subset = q.config.subset;
  const auto b = run_experiment(bcfg);
  ASSERT_EQ(q.windows.size(), 2u);
  ASSERT_EQ(b.windows.size(), 2u);
  for (std::size_t w = 0; w < 2; ++w) EXPECT_EQ(q.windows[w].hash, b.windows[w].hash);
  EXPECT_EQ(q.customer_ids, b.customer_ids);
  EXPECT_EQ(q.models, (std::vector<std::string>{"naive", "kqrc"}));
  for (const auto& r : q.results) {
    EXPECT_EQ(r.predictions.rows(), 3);
    EXPECT_EQ(r.predictions.cols(), 5);
  }
}

TEST(BenchRun, ModelsListIsHonoured) {
  auto cfg = small(ExperimentKind::KqrcTriplet, 1);
  cfg.models = {"naive", "esn", "kqrc"};
  const auto r = run_experiment(cfg);
  EXPECT_EQ(r.models, cfg.models);
  EXPECT_EQ(r.results.size(), 3u);
}

TEST(BenchRun, QubitScalingHasTwoCurvesOfFourSizes) {
  const auto r = run_experiment(small(ExperimentKind::QubitScaling, 1));
  ASSERT_EQ(r.qubit_scaling.size(), 8u);
  int entangled = 0;
  for (const auto& p : r.qubit_scaling) {
    entangled += p.entangled ? 1 : 0;
    EXPECT_GE(p.n_qubits, 2);
    EXPECT_LE(p.n_qubits, 5);
    EXPECT_TRUE(std::isfinite(p.mean_relative_error));
  }
  EXPECT_EQ(entangled, 4);
  const auto tables = render_tables(r);
  const auto* fig7 = find_table(tables, "fig7_qubit_scaling.csv");
  ASSERT_NE(fig7, nullptr);
  EXPECT_EQ(count_lines(*fig7), 9);
}

TEST(BenchReport, JsonRoundTripTablesAndDeterminism) {
  const auto cfg = small(ExperimentKind::KqrcTriplet);
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  auto ja = report_to_json(a);
  auto jb = report_to_json(b);
  ja.erase("wall_clock_seconds");
  jb.erase("wall_clock_seconds");
  EXPECT_EQ(ja.dump(), jb.dump());

  // the echoed config reproduces the report
  const auto c = run_experiment(parse_config(report_to_json(a).at("config")));
  auto jc = report_to_json(c);
  jc.erase("wall_clock_seconds");
  EXPECT_EQ(jc.dump(), ja.dump());

  const auto back = report_from_json(report_to_json(a));
  EXPECT_EQ(render_tables(back), render_tables(a));
  EXPECT_EQ(report_to_json(a).at("config"), to_json(a.config));

  const auto tables = render_tables(a);
  const auto* metrics = find_table(tables, "metrics.csv");
  ASSERT_NE(metrics, nullptr);
  EXPECT_EQ(count_lines(*metrics), 1 + 2 * 3 * 5);  // header + models x customers x horizons
  const auto* tiers = find_table(tables, "tiers.csv");
  ASSERT_NE(tiers, nullptr);
  EXPECT_EQ(count_lines(*tiers), 1 + 2 * 3);
  EXPECT_EQ(tiers->substr(0, tiers->find('\n')), "model,tier,count,share_percent,avg_mae,avg_mse");

  const auto dir = std::filesystem::temp_directory_path() / "qforecast_test_bench_report";
  std::filesystem::remove_all(dir);
  write_report(a, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_EQ(read_file(dir / "metrics.csv"), *metrics);
  std::filesystem::remove_all(dir);
}

TEST(BenchReport, SummaryCountsWindowsBeatingNaive) {
  const auto r = run_experiment(small(ExperimentKind::KqrcTriplet, 3));
  const auto s = summarize_models(r);
  ASSERT_EQ(s.size(), 2u);
  int beats = 0;
  for (std::size_t w = 0; w < 3; ++w) beats += s[1].window_mae[w] < s[0].window_mae[w] ? 1 : 0;
  EXPECT_EQ(s[1].windows_beating_naive, beats);
  for (std::size_t w = 0; w < 3; ++w) {
    EXPECT_NEAR(s[0].window_relative_error[w], s[0].window_mae[w] / r.windows[w].mean_abs_train, 1e-12);
  }
}

TEST(BenchReport, OutputDirectoryErrorsNameThePath) {
  const auto r = run_experiment(small(ExperimentKind::KqrcTriplet, 1));
  const auto blocker = std::filesystem::temp_directory_path() / "qforecast_test_blocker";
  std::ofstream(blocker) << "x";
  try {
    write_report(r, blocker / "sub");
    FAIL() << "expected an I/O error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("qforecast_test_blocker"), std::string::npos);
  }
  std::filesystem::remove(blocker);
}

}  // namespace

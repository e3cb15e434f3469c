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

#include <benchmark/benchmark.h>

#include "qforecast/qgp/feature_map.hpp"
#include "qforecast/qgp/projected_kernel.hpp"
#include "qforecast/qgp/trainer.hpp"
#include "qforecast/random.hpp"

namespace {

using namespace qforecast;

Eigen::MatrixXd inputs(int n, int q) {
  Rng rng(3);
  Eigen::MatrixXd x(n, q);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  return x;
}

void tables(benchmark::State& st, qgp::Backend backend) {
  const int q = static_cast<int>(st.range(0));
  const auto p = qgp::FeatureMapParams::random(q, 1);
  const auto x = inputs(10, q);
  qgp::SimOptions opts;
  opts.backend = backend;
  opts.workers = 1;
  for (auto _ : st) benchmark::DoNotOptimize(qgp::projected_kernel_matrix(qgp::expectation_tables(x, p, opts)));
}

void BM_GramDense(benchmark::State& st) { tables(st, qgp::Backend::Dense); }
BENCHMARK(BM_GramDense)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_GramMps(benchmark::State& st) { tables(st, qgp::Backend::Mps); }
BENCHMARK(BM_GramMps)->Arg(12)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LikelihoodGradient(benchmark::State& st) {
  const int q = 5;
  const int n = static_cast<int>(st.range(0));
  const auto p = qgp::FeatureMapParams::random(q, 2);
  const auto x = inputs(n, q);
  const Eigen::MatrixXd y = inputs(n, q).array() - 0.5;
  for (auto _ : st) benchmark::DoNotOptimize(qgp::likelihood_with_gradient(x, y, p, 0.05));
}
BENCHMARK(BM_LikelihoodGradient)->Arg(14)->Arg(28)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

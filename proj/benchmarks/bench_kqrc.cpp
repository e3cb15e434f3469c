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

#include "qforecast/kqrc.hpp"
#include "qforecast/random.hpp"

namespace {

using namespace qforecast;

Eigen::MatrixXd series(int streams, int t) {
  Rng rng(5);
  Eigen::MatrixXd m(streams, t);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform();
  return m;
}

// Full reservoir pass over 15 steps; range(0) streams of range(1) qubits.
void reservoir(benchmark::State& st, kqrc::Propagation prop) {
  kqrc::ReservoirConfig cfg;
  cfg.n_streams = static_cast<int>(st.range(0));
  cfg.qubits_per_stream = static_cast<int>(st.range(1));
  cfg.propagation = prop;
  const auto x = series(cfg.n_streams, 15);
  for (auto _ : st) benchmark::DoNotOptimize(kqrc::run_reservoir(x, cfg));
}

void BM_ReservoirDense(benchmark::State& st) { reservoir(st, kqrc::Propagation::Dense); }
BENCHMARK(BM_ReservoirDense)->Args({1, 4})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_ReservoirDephased(benchmark::State& st) { reservoir(st, kqrc::Propagation::Dephased); }
BENCHMARK(BM_ReservoirDephased)->Args({1, 4})->Args({2, 2})->Args({2, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_RbfReadout(benchmark::State& st) {
  const int t = static_cast<int>(st.range(0));
  const Eigen::MatrixXd f = series(t, 16).array().abs();
  const Eigen::VectorXd y = series(t, 1).col(0);
  for (auto _ : st) benchmark::DoNotOptimize(kqrc::fit_rbf_readout(f, y, 10.0, 1e-3, true));
}
BENCHMARK(BM_RbfReadout)->Arg(15)->Arg(200);

}  // namespace

BENCHMARK_MAIN();

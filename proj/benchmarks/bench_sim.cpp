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

#include "qforecast/mps.hpp"
#include "qforecast/sim/circuit.hpp"
#include "qforecast/sim/ops.hpp"
#include "qforecast/sim/state.hpp"

namespace {

using namespace qforecast;

// Two rotation layers and two CNOT brickwork layers.
sim::Circuit brickwork(int n) {
  sim::Circuit c(n);
  for (int layer = 0; layer < 2; ++layer) {
    for (int q = 0; q < n; ++q) c.add(sim::Gate::ry(q, 0.3 + 0.1 * q)).add(sim::Gate::rx(q, 0.7 - 0.05 * q));
    for (int q = layer; q + 1 < n; q += 2) c.add(sim::Gate::cnot(q, q + 1));
  }
  return c;
}

void BM_StatevectorBrickwork(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto c = brickwork(n);
  for (auto _ : st) benchmark::DoNotOptimize(sim::run_circuit(c, sim::QuantumState::zero(n)));
}
BENCHMARK(BM_StatevectorBrickwork)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_DensityBrickwork(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto c = brickwork(n);
  for (auto _ : st) {
    benchmark::DoNotOptimize(sim::run_circuit(c, sim::QuantumState::zero(n, sim::Representation::DensityMatrix)));
  }
}
BENCHMARK(BM_DensityBrickwork)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_MpsBrickwork(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto c = brickwork(n);
  for (auto _ : st) benchmark::DoNotOptimize(mps::mps_run(c, mps::mps_zero(n)));
}
BENCHMARK(BM_MpsBrickwork)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

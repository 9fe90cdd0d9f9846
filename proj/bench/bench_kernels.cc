// Copyright 2026 The dyncirc Authors
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

// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "dyncirc/builders.h"
#include "dyncirc/dense.h"
#include "dyncirc/noise.h"
#include "dyncirc/simulator.h"

using namespace dyncirc;

static void BM_Apply1qSerial(benchmark::State &st) {
  StateVector s(static_cast<size_t>(st.range(0)));
  Matrix h = gate_matrix(Op::H);
  for (auto _ : st) {
    for (size_t q = 0; q < s.num_qubits(); q++) serial::apply_1q(s, h, q);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_Apply1qSerial)->Arg(12)->Arg(14);

static void BM_Apply1qOmp(benchmark::State &st) {
  StateVector s(static_cast<size_t>(st.range(0)));
  Matrix h = gate_matrix(Op::H);
  for (auto _ : st) {
    for (size_t q = 0; q < s.num_qubits(); q++) s.apply_1q(h, q);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_Apply1qOmp)->Arg(12)->Arg(14);

static void BM_ShotsSerial(benchmark::State &st) {
  NoiseParams p{0.03, 0.02, 0.03, 3.65, {}, {}};
  Circuit c = attach_noise(long_range_cnot_dynamic(static_cast<uint32_t>(st.range(0)), DynamicMode::FeedForward, 3.65), p);
  for (auto _ : st) benchmark::DoNotOptimize(run_shots_serial(c, 256, 5));
}
BENCHMARK(BM_ShotsSerial)->Arg(32)->Arg(128);

static void BM_ShotsOmp(benchmark::State &st) {
  NoiseParams p{0.03, 0.02, 0.03, 3.65, {}, {}};
  Circuit c = attach_noise(long_range_cnot_dynamic(static_cast<uint32_t>(st.range(0)), DynamicMode::FeedForward, 3.65), p);
  for (auto _ : st) benchmark::DoNotOptimize(run_shots(c, 256, 5));
}
BENCHMARK(BM_ShotsOmp)->Arg(32)->Arg(128);

BENCHMARK_MAIN();

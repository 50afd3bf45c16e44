// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: capacity evaluations dominate every
// solver, the eigensolver dominates the waterfilled mode, and the ensemble
// sweeps are bounded by continuous greedy.

#include <benchmark/benchmark.h>

#include <vector>

#include "swipt/algorithms.hpp"
#include "swipt/continuous.hpp"
#include "swipt/model.hpp"

namespace {

using namespace swipt;

ChannelInstance make_instance(int n_r) {
  Rng rng(0xBE);
  return generate_instance(rng, 5, n_r, 4);
}

std::vector<AntennaSet> random_sets(int n_r, int count) {
  Rng rng(0xBF);
  std::vector<AntennaSet> sets(count);
  for (AntennaSet& s : sets) {
    s = static_cast<AntennaSet>(rng.next_u64()) & full_set(n_r);
  }
  return sets;
}

void BM_CapacityEqualPower(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const ChannelInstance inst = make_instance(n_r);
  const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
  const auto sets = random_sets(n_r, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity_csir(spec, sets[i++ & 255]));
  }
}
BENCHMARK(BM_CapacityEqualPower)->Arg(4)->Arg(8)->Arg(16);

void BM_CapacityWaterfilled(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const ChannelInstance inst = make_instance(n_r);
  const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsit);
  const auto sets = random_sets(n_r, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity_csit(spec, sets[i++ & 255]));
  }
}
BENCHMARK(BM_CapacityWaterfilled)->Arg(4)->Arg(8)->Arg(16);

void BM_HermitianEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(0xE1);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.next_complex_gaussian().real();
    for (int j = i + 1; j < n; ++j) {
      const Complex z = rng.next_complex_gaussian();
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigenvalues(m));
  }
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(5)->Arg(8)->Arg(16)->Arg(32);

void BM_Waterfill(benchmark::State& state) {
  Rng rng(0xE2);
  std::vector<double> gains(8);
  for (double& g : gains) g = 0.1 + std::norm(rng.next_complex_gaussian());
  for (auto _ : state) {
    benchmark::DoNotOptimize(waterfill(gains, 5.0));
  }
}
BENCHMARK(BM_Waterfill);

void BM_GreedyPartition(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const ChannelInstance inst = make_instance(n_r);
  const CircuitPowerSystem sys =
      CircuitPowerSystem::from_channel(inst, 0.2 * n_r);
  const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
  const SetFunctionOracle oracle = capacity_oracle(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_partition(oracle, sys));
  }
}
BENCHMARK(BM_GreedyPartition)->Arg(8)->Arg(16);

void BM_BruteForce(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const ChannelInstance inst = make_instance(n_r);
  const CircuitPowerSystem sys =
      CircuitPowerSystem::from_channel(inst, 0.2 * n_r);
  const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
  const SetFunctionOracle oracle = capacity_oracle(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force(oracle, sys));
  }
}
BENCHMARK(BM_BruteForce)->Arg(8)->Arg(12);

void BM_ContinuousGreedyPartition(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  const ChannelInstance inst = make_instance(n_r);
  const CircuitPowerSystem sys =
      CircuitPowerSystem::from_channel(inst, 0.2 * n_r);
  const ObjectiveSpec spec = make_objective(inst, 5.0, CsiMode::kCsir);
  const SetFunctionOracle oracle = capacity_oracle(spec);
  ContinuousGreedyConfig cfg;
  cfg.seed = 0xE3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(continuous_greedy_partition(oracle, sys, cfg));
  }
}
BENCHMARK(BM_ContinuousGreedyPartition)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

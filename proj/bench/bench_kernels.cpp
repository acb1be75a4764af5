// Copyright 2026 The qpsq-lab Authors
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

// Serial reference vs OpenMP kernels. Run with --benchmark_counters_tabular=true.

#include <benchmark/benchmark.h>

#include "qpsq/ensembles.hpp"
#include "qpsq/kernels.hpp"
#include "qpsq/learner.hpp"

namespace {

using namespace qpsq;

struct Data {
  std::vector<PauliString> paulis;
  std::vector<StabilizerProductState> states;
  std::vector<double> y;
};

Data make_data(int n, int k, std::size_t records) {
  Data d;
  d.paulis = enumerate_low_degree(n, k);
  Rng rng(1);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < records; ++i) {
    d.states.push_back(sample_stabilizer_product(n, rng));
    d.y.push_back(g(rng));
  }
  return d;
}

void BM_CorrelationsSerial(benchmark::State& state) {
  const auto d = make_data(static_cast<int>(state.range(0)), 3, 20000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pauli_correlations_serial(d.paulis, d.states, d.y));
  }
  state.counters["paulis"] = static_cast<double>(d.paulis.size());
}

void BM_CorrelationsParallel(benchmark::State& state) {
  const auto d = make_data(static_cast<int>(state.range(0)), 3, 20000);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pauli_correlations_parallel(d.paulis, d.states, d.y, jobs));
  }
  state.counters["paulis"] = static_cast<double>(d.paulis.size());
}

double haar_sample(std::uint64_t, Rng& r) {
  const Matrix u = haar_unitary(3, r);
  return std::norm(u(0, 0));
}

void BM_HaarSamplesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_serial(4000, 7, haar_sample));
}

void BM_HaarSamplesParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_parallel(4000, 7, haar_sample, jobs));
}

void BM_GatherData(benchmark::State& state) {
  Rng crng(3);
  const Channel c = Channel::unitary(haar_unitary(4, crng));
  const auto o = Observable::parse_pauli("ZIII");
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Oracle oracle(c, GaussianMode{});
    Rng rng(5);
    benchmark::DoNotOptimize(gather_data(oracle, 4, 5000, o, 0.2, rng, false, jobs));
  }
}

}  // namespace

BENCHMARK(BM_CorrelationsSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelationsParallel)
    ->ArgsProduct({{6, 8}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_HaarSamplesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HaarSamplesParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GatherData)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

// Copyright 2026 The dicke-rbm Authors
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

#include "dicke/compact_rbm.hpp"
#include "dicke/correlations.hpp"
#include "dicke/rbm.hpp"
#include "dicke/state.hpp"
#include "dicke/tomography.hpp"

namespace dicke {
namespace {

RbmParameters random_rbm(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  RbmParameters rbm(n, m);
  for (Eigen::Index i = 0; i < rbm.weights.size(); ++i) {
    rbm.weights.data()[i] = 0.5 * (2.0 * rng.uniform() - 1.0);
  }
  return rbm;
}

void BM_FidelityAnalytic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CompactRbm c = optimal_weights(n, n / 2, 50.0);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_analytic(c, n / 2));
}
BENCHMARK(BM_FidelityAnalytic)->Arg(8)->Arg(128)->Arg(1024);

void BM_PhaseDiagram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto res = static_cast<std::size_t>(state.range(1));
  const AxisSpec wmin = AxisSpec::from_count(-10.0, -0.02, res);
  const AxisSpec wmax = AxisSpec::from_count(10.0 * n / 500.0, 10.0 * n, res);
  for (auto _ : state) benchmark::DoNotOptimize(phase_diagram(n, wmin, wmax));
  state.SetItemsProcessed(state.iterations() * std::int64_t(res * res));
}
BENCHMARK(BM_PhaseDiagram)->Args({8, 200})->Args({128, 100})->Unit(benchmark::kMillisecond);

void BM_PartitionFunction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RbmParameters rbm = random_rbm(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(partition_function(rbm));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PartitionFunction)->Arg(8)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GibbsStep(benchmark::State& state) {
  const RbmParameters rbm = random_rbm(16, 16, 2);
  Rng rng(3);
  BitString v(16);
  for (auto _ : state) {
    v = gibbs_step(rbm, v, rng);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GibbsStep);

void BM_CdGradientBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RbmParameters rbm = random_rbm(n, n, 4);
  const SampleSet data = sample_measurements(DickeState(n, n / 2), 100, 5);
  Eigen::MatrixXd batch(100, static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < 100; ++s) {
    for (std::size_t i = 0; i < n; ++i) batch(Eigen::Index(s), Eigen::Index(i)) = data.samples[s][i];
  }
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(cd_gradient(rbm, batch, 10, rng));
}
BENCHMARK(BM_CdGradientBatch)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_UrsellHistogram(benchmark::State& state) {
  const DickeState d(16, 8);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_histogram(d, 4, 1, 10));
}
BENCHMARK(BM_UrsellHistogram)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dicke

BENCHMARK_MAIN();

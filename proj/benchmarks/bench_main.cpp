// Copyright 2026 The nisqlab Authors
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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nisq/anneal.hpp"
#include "nisq/baselines.hpp"
#include "nisq/dqc.hpp"
#include "nisq/problems.hpp"
#include "nisq/qaoa.hpp"
#include "nisq/statevector.hpp"

using namespace nisq;

namespace {

DiagonalObservable sk_cost(int n) {
  const auto e = ising_to_diagonal(sherrington_kirkpatrick(n, 7));
  std::vector<double> c(e.values().begin(), e.values().end());
  for (double& v : c) v = -v;
  return DiagonalObservable(std::move(c));
}

void BM_HadamardLayer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = StateVector::basis_state(n, 0);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) s = apply_hadamard(std::move(s), q);
    benchmark::DoNotOptimize(s[0]);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HadamardLayer)->DenseRange(8, 14, 2);

void BM_RotationLayer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = StateVector::basis_state(n, 0);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) s = apply_axis_rotation(std::move(s), q, Axis::X, 0.3);
    benchmark::DoNotOptimize(s[0]);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RotationLayer)->DenseRange(8, 14, 2);

void BM_QaoaExpectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), p = static_cast<int>(state.range(1));
  const auto cost = sk_cost(n);
  const QaoaParams params{std::vector<double>(p, 0.4), std::vector<double>(p, 0.7)};
  for (auto _ : state) benchmark::DoNotOptimize(qaoa_expectation(cost, params));
}
BENCHMARK(BM_QaoaExpectation)->ArgsProduct({{6, 8, 10}, {1, 3}});

void BM_AnnealRun(benchmark::State& state) {
  const auto problem = random_energy_problem(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_anneal(problem, AnnealProtocol::protocol1(2.0), 1e-2).ground_state_fidelity);
  }
}
BENCHMARK(BM_AnnealRun)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DpllAtThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = random_ksat(n, static_cast<int>(std::lround(4.25 * n)), 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(dpll_count(f).backtracks);
}
BENCHMARK(BM_DpllAtThreshold)->Arg(20)->Arg(40);

void BM_DqcLossGradient(benchmark::State& state) {
  const auto model =
      QuantumModel::make(FeatureMap::make(FeatureMapKind::ChebyshevTower, 4), VariationalAnsatz::random(4, 3, 1, 1.0));
  const auto problem = decay_problem(20);
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(ode_loss_gradient(model, problem, grad));
}
BENCHMARK(BM_DqcLossGradient)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

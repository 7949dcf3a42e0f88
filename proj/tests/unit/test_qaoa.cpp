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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dense_oracle.hpp"
#include "nisq/anneal.hpp"
#include "nisq/error.hpp"
#include "nisq/problems.hpp"
#include "nisq/qaoa.hpp"
#include "nisq/random.hpp"

using namespace nisq;

namespace {

std::vector<double> as_vector(const DiagonalObservable& d) { return {d.values().begin(), d.values().end()}; }

// e^{-i beta_p H_M} e^{-i gamma_p H_I} ... |+>, H_I = -C, H_M = sum X.
oracle::Vec dense_qaoa(const std::vector<double>& cost, const QaoaParams& params, int n) {
  oracle::Mat hm = -oracle::transverse_field(n);
  oracle::Mat hi = -oracle::diagonal(cost);
  oracle::Vec psi = oracle::plus_state(n);
  for (int k = 0; k < params.p(); ++k) {
    psi = oracle::expm_hermitian(hi, params.gamma[k]) * psi;
    psi = oracle::expm_hermitian(hm, params.beta[k]) * psi;
  }
  return psi;
}

double dense_expectation(const std::vector<double>& cost, const QaoaParams& params, int n) {
  const oracle::Vec psi = dense_qaoa(cost, params, n);
  return (psi.adjoint() * oracle::diagonal(cost) * psi)(0, 0).real();
}

DiagonalObservable ring_maxcut(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  std::vector<double> cut(std::size_t{1} << n);
  for (std::size_t x = 0; x < cut.size(); ++x) cut[x] = cut_size(edges, BitString::from_index(x, n));
  return DiagonalObservable(std::move(cut));
}

}  // namespace

TEST(QaoaParams, FlattenRoundTripAndValidation) {
  const QaoaParams p{{0.1, 0.2}, {0.3, 0.4}};
  EXPECT_EQ(p.flatten(), (std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(QaoaParams::from_flat(p.flatten()), p);
  EXPECT_THROW((QaoaParams{{}, {}}.validate()), DomainError);
  EXPECT_THROW((QaoaParams{{0.1}, {0.1, 0.2}}.validate()), DomainError);
  EXPECT_THROW((QaoaParams{{NAN}, {0.1}}.validate()), DomainError);
}

TEST(QaoaState, MatchesDenseOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<double> cost(std::size_t{1} << n);
    for (auto& c : cost) c = rng.uniform(-2, 3);
    QaoaParams params;
    for (int k = 0; k < 3; ++k) {
      params.gamma.push_back(rng.uniform(-3, 3));
      params.beta.push_back(rng.uniform(-3, 3));
    }
    const DiagonalObservable obs(cost);
    EXPECT_LT(oracle::max_abs_diff(qaoa_state(obs, params), dense_qaoa(cost, params, n)), 1e-12);
    EXPECT_NEAR(qaoa_expectation(obs, params), dense_expectation(cost, params, n), 1e-12);
  }
}

TEST(QaoaState, IdentityLayerLeavesStateUnchanged) {
  const auto cost = ring_maxcut(4);
  const QaoaParams p{{0.7}, {0.3}};
  const auto extended = extend_depth(p);
  EXPECT_EQ(extended.p(), 2);
  EXPECT_LT(oracle::max_abs_diff(qaoa_state(cost, extended), oracle::to_eigen(qaoa_state(cost, p))), 1e-14);
}

TEST(Optimize, RingOfFourReachesGridOptimum) {
  const auto cost = ring_maxcut(4);
  QaoaOptions options;
  options.p = 1;
  options.seed = 5;
  options.budget = 4000;
  const auto out = optimize_qaoa(cost, options);
  double grid_best = -1e300;
  const int m = 200;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      grid_best =
          std::max(grid_best,
                   dense_expectation(as_vector(cost), {{2 * std::numbers::pi * i / m}, {std::numbers::pi * j / m}}, 4));
  EXPECT_GE(out.expectation, grid_best - 1e-6);
  EXPECT_NEAR(out.c_max, 4.0, 0.0);
  EXPECT_NEAR(out.approximation_ratio, out.expectation / 4.0, 1e-15);
  EXPECT_LE(out.n_evaluations, options.budget);
  EXPECT_NEAR(qaoa_expectation(cost, out.best_params), out.expectation, 1e-12);
  // Integer cost: angles land in the canonical box.
  EXPECT_GE(out.best_params.gamma[0], 0.0);
  EXPECT_LT(out.best_params.gamma[0], 2 * std::numbers::pi);
  EXPECT_GE(out.best_params.beta[0], 0.0);
  EXPECT_LT(out.best_params.beta[0], std::numbers::pi);
  double total = 0.0;
  for (double pr : out.sample_distribution) total += pr;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Optimize, BudgetIsHardCap) {
  const auto cost = ring_maxcut(5);
  for (int budget : {1, 7, 60, 333}) {
    for (auto strategy : {QaoaStrategy::MultistartLocal, QaoaStrategy::GridThenLocal}) {
      QaoaOptions options;
      options.p = 2;
      options.budget = budget;
      options.strategy = strategy;
      options.grid_points = 6;
      const auto out = optimize_qaoa(cost, options);
      EXPECT_LE(out.n_evaluations, budget);
      EXPECT_GE(out.n_evaluations, 1);
    }
  }
  QaoaOptions bad;
  bad.budget = 0;
  EXPECT_THROW(optimize_qaoa(cost, bad), DomainError);
}

TEST(Optimize, DeterministicPerSeed) {
  const auto cost = ring_maxcut(5);
  QaoaOptions options;
  options.p = 2;
  options.seed = 77;
  options.budget = 2000;
  const auto a = optimize_qaoa(cost, options);
  const auto b = optimize_qaoa(cost, options);
  EXPECT_EQ(a.best_params, b.best_params);
  EXPECT_EQ(a.expectation, b.expectation);
  EXPECT_EQ(a.n_evaluations, b.n_evaluations);
}

TEST(Optimize, WarmStartIsNeverWorse) {
  const auto cost = ring_maxcut(6);
  QaoaOptions options;
  options.p = 1;
  options.budget = 1500;
  const auto p1 = optimize_qaoa(cost, options);
  options.p = 2;
  options.warm_start = extend_depth(p1.best_params);
  const auto p2 = optimize_qaoa(cost, options);
  EXPECT_GE(p2.expectation, p1.expectation - 1e-12);
}

TEST(Ratio, EdgeCases) {
  EXPECT_DOUBLE_EQ(approximation_ratio(3.0, 4.0), 0.75);
  EXPECT_DOUBLE_EQ(approximation_ratio(0.0, 0.0), 1.0);
  EXPECT_THROW(approximation_ratio(1.0, -1.0), DomainError);
}

TEST(Sampling, ChiSquareAgainstBornRule) {
  const auto state = qaoa_state(ring_maxcut(3), {{0.4}, {0.9}});
  const auto probs = state.probabilities();
  const int shots = 40000;
  const auto samples = sample_indices(state, shots, 12);
  std::vector<int> counts(probs.size(), 0);
  for (auto s : samples) ++counts[s];
  double chi2 = 0.0;
  int dof = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 1e-12) {
      EXPECT_EQ(counts[i], 0);
      continue;
    }
    chi2 += (counts[i] - shots * probs[i]) * (counts[i] - shots * probs[i]) / (shots * probs[i]);
    ++dof;
  }
  ASSERT_GT(dof, 0);
  EXPECT_LT(chi2, 24.32);  // 99.9% quantile for 7 dof; fewer dof only tightens it
  EXPECT_EQ(sample_indices(state, 50, 12), sample_indices(state, 50, 12));
  const auto bits = sample_bitstrings(state, 10, 12);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(bits[i].index(), samples[i]);
}

TEST(Trotter, AnglesFollowTheSchedule) {
  const auto f = [](double t) { return t / 2.0; };
  const auto r = [](double t) { return 1.0 - t / 2.0; };
  const auto params = trotter_params(f, r, 2.0, 4);
  ASSERT_EQ(params.p(), 4);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_DOUBLE_EQ(params.gamma[k - 1], f(0.5 * k) * 0.5);
    EXPECT_DOUBLE_EQ(params.beta[k - 1], -r(0.5 * k) * 0.5);
  }
}

TEST(Trotter, ConvergesToContinuousAnneal) {
  IsingHamiltonian h(2);
  h.set_coupling(0, 1, 1.0);
  h.set_field(0, 0.5);
  const auto energies = ising_to_diagonal(h);
  std::vector<double> cost(energies.values().begin(), energies.values().end());
  for (auto& c : cost) c = -c;
  const double T = 2.0;
  const auto protocol = AnnealProtocol::linear(T);
  const auto reference = run_anneal(h, protocol, 1e-4).final_state;
  double previous = 0.0;
  for (int p : {8, 32, 128}) {
    const double fid =
        fidelity(qaoa_state(DiagonalObservable(cost), trotter_params(protocol.f, protocol.r, T, p)), reference);
    EXPECT_GT(fid, previous);
    previous = fid;
  }
  EXPECT_GT(previous, 0.999);
}

TEST(Hardness, RowsAndWarmStartMonotonicity) {
  HardnessOptions options;
  options.budget = 600;
  options.starts = 3;
  const std::vector<double> ratios{1.0, 3.0};
  const auto rows = hardness_sweep_qaoa(4, ratios, {2, 1, 2}, 2, 9, options);
  ASSERT_EQ(rows.size(), 2u * 2u * 2u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_EQ(r.ratio, ratios[i / 4]);
    EXPECT_EQ(r.p, 1 + static_cast<int>((i / 2) % 2));
    EXPECT_EQ(r.instance, static_cast<int>(i % 2));
    const auto f = random_ksat(4, r.n_clauses, 3, r.instance_seed);
    EXPECT_EQ(r.sat_optimum, static_cast<int>(maxsat_diagonal(f).max()));
    EXPECT_LE(r.qaoa_ratio, 1.0 + 1e-12);
    EXPECT_GT(r.qaoa_ratio, 0.0);
  }
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    EXPECT_GE(rows[i + 2].qaoa_ratio, rows[i].qaoa_ratio - 1e-12);
    EXPECT_GE(rows[i + 3].qaoa_ratio, rows[i + 1].qaoa_ratio - 1e-12);
  }
  EXPECT_EQ(rows[0].n_clauses, 4);
  EXPECT_EQ(rows[4].n_clauses, 12);
  EXPECT_THROW(hardness_sweep_qaoa(2, ratios, {1}, 1, 0, options), SizeError);
}

TEST(ClosedForms, GateFailureProbability) {
  EXPECT_NEAR(gate_failure_probability(0.01, 20), 1.0 - std::pow(0.99, 20), 1e-12);
  EXPECT_EQ(gate_failure_probability(0.0, 1000), 0.0);
  EXPECT_EQ(gate_failure_probability(1.0, 3), 1.0);
  EXPECT_EQ(gate_failure_probability(0.3, 0), 0.0);
  // Tiny p: the naive 1 - (1 - p)^n loses every digit here.
  EXPECT_NEAR(gate_failure_probability(1e-18, 1000), 1e-15, 1e-27);
  EXPECT_THROW(gate_failure_probability(-0.1, 3), DomainError);
  EXPECT_THROW(gate_failure_probability(0.1, -3), DomainError);
}

TEST(ClosedForms, AlgorithmicQubits) {
  EXPECT_EQ(algorithmic_qubits({{1, 100}, {2, 50}, {4, 4}, {8, 3}}), 4);
  EXPECT_EQ(algorithmic_qubits({{5, 2}, {6, 3}}), 3);
  EXPECT_EQ(algorithmic_qubits({{10, 10}}), 10);
  EXPECT_THROW(algorithmic_qubits({}), DomainError);
}

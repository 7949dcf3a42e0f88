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

#include <cmath>
#include <vector>

#include "nisq/baselines.hpp"
#include "nisq/error.hpp"
#include "nisq/problems.hpp"
#include "nisq/random.hpp"

using namespace nisq;

namespace {

QuboProblem random_qubo(int n, std::uint64_t seed) {
  Rng rng(seed);
  QuboProblem q(n);
  for (int i = 0; i < n; ++i) {
    q.add_linear(i, rng.uniform(-1, 1));
    for (int j = i + 1; j < n; ++j) q.add_product(i, j, rng.uniform(-1, 1));
  }
  return q;
}

bool brute_force_sat(const CnfFormula& f) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.n_vars()); ++x) {
    if (f.satisfied_by(BitString::from_index(x, f.n_vars()))) return true;
  }
  return false;
}

}  // namespace

TEST(BruteForce, MatchesLinearScan) {
  for (int s = 0; s < 20; ++s) {
    const int n = 3 + s % 8;
    const auto q = random_qubo(n, s);
    std::uint64_t arg = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
      if (q.energy(i) < q.energy(arg)) arg = i;
    }
    const auto gray = brute_force_minimum(q);
    EXPECT_NEAR(gray.energy, q.energy(arg), 1e-12);
    EXPECT_EQ(gray.assignment.index(), arg);
    const auto diag = brute_force_minimum(qubo_to_diagonal(q));
    EXPECT_EQ(diag.assignment.index(), arg);
  }
}

TEST(BruteForce, TiesGoToLowestIndex) {
  const DiagonalObservable obs({3.0, 1.0, 2.0, 1.0});
  EXPECT_EQ(brute_force_minimum(obs).assignment.index(), 1u);
  QuboProblem q(3);  // all zero: every index ties
  EXPECT_EQ(brute_force_minimum(q).assignment.index(), 0u);
}

TEST(Dpll, AgreesWithExhaustiveSearch) {
  int sat = 0;
  for (int s = 0; s < 200; ++s) {
    const int n = 5 + s % 8;
    const auto f = random_ksat(n, static_cast<int>(std::round(4.3 * n)), 3, 500 + s);
    const auto stats = dpll_count(f);
    EXPECT_EQ(stats.satisfiable, brute_force_sat(f)) << "seed " << s;
    EXPECT_LE(stats.backtracks, stats.decisions);
    sat += stats.satisfiable;
  }
  // Near the threshold both outcomes must occur.
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 180);
}

TEST(Dpll, TrivialFormulas) {
  EXPECT_TRUE(dpll_count(CnfFormula(3, {})).satisfiable);
  const auto contradiction = dpll_count(CnfFormula(1, {{1}, {-1}}));
  EXPECT_FALSE(contradiction.satisfiable);
  EXPECT_EQ(contradiction.decisions, 0);
  // Unit propagation alone settles a chain.
  const auto chain = dpll_count(CnfFormula(3, {{1}, {-1, 2}, {-2, 3}}));
  EXPECT_TRUE(chain.satisfiable);
  EXPECT_EQ(chain.backtracks, 0);
}

TEST(Dpll, Deterministic) {
  const auto f = random_ksat(20, 86, 3, 42);
  const auto a = dpll_count(f);
  const auto b = dpll_count(f);
  EXPECT_EQ(a.backtracks, b.backtracks);
  EXPECT_EQ(a.decisions, b.decisions);
}

TEST(Sa, ScheduleEndpoints) {
  SaSchedule geo{2.0, 0.02, 100, Cooling::Geometric};
  EXPECT_DOUBLE_EQ(geo.temperature(0), 2.0);
  EXPECT_NEAR(geo.temperature(100), 0.02, 1e-12);
  EXPECT_NEAR(geo.temperature(50), 0.2, 1e-12);
  SaSchedule lin{2.0, 0.02, 100, Cooling::Linear};
  EXPECT_DOUBLE_EQ(lin.temperature(0), 2.0);
  EXPECT_NEAR(lin.temperature(99), 0.02, 1e-12);
  EXPECT_THROW((SaSchedule{0.1, 1.0, 10, Cooling::Geometric}.validate()), DomainError);
  EXPECT_THROW((SaSchedule{1.0, 0.0, 10, Cooling::Geometric}.validate()), DomainError);
  EXPECT_THROW((SaSchedule{1.0, 0.1, 0, Cooling::Geometric}.validate()), DomainError);
}

TEST(Sa, MetropolisRule) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(metropolis_accept(-0.5, 0.1, rng));
  EXPECT_TRUE(metropolis_accept(0.0, 0.1, rng));
  for (double ratio : {0.5, 1.0, 2.0}) {
    int accepted = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) accepted += metropolis_accept(ratio * 0.3, 0.3, rng);
    const double p = std::exp(-ratio);
    EXPECT_NEAR(static_cast<double>(accepted) / trials, p, 4.0 * std::sqrt(p * (1 - p) / trials));
  }
}

TEST(Sa, FindsGroundStateOfSmallProblems) {
  for (int s = 0; s < 10; ++s) {
    const auto q = random_qubo(10, 40 + s);
    const auto exact = brute_force_minimum(q);
    const auto sa = simulated_annealing(q, SaSchedule{2.0, 1e-3, 20000, Cooling::Geometric}, s);
    EXPECT_NEAR(sa.best_energy, exact.energy, 1e-9) << "seed " << s;
    EXPECT_NEAR(q.energy(sa.best), sa.best_energy, 1e-9);
    EXPECT_EQ(sa.trace.size(), 20000u);
  }
}

TEST(Sa, IsingAndQuboAgree) {
  const auto q = random_qubo(8, 3);
  const auto h = qubo_to_ising(q);
  const SaSchedule schedule{1.0, 1e-3, 5000, Cooling::Geometric};
  const auto a = simulated_annealing(q, schedule, 9);
  const auto b = simulated_annealing(h, schedule, 9);
  EXPECT_NEAR(a.best_energy, b.best_energy, 1e-9);
  EXPECT_EQ(a.best, b.best);
}

TEST(Sa, SameSeedSameTrace) {
  const auto q = random_qubo(6, 1);
  const SaSchedule schedule{1.0, 1e-2, 500, Cooling::Linear};
  EXPECT_EQ(simulated_annealing(q, schedule, 5).trace, simulated_annealing(q, schedule, 5).trace);
}

TEST(PaintShop, GreedyKnownSequence) {
  // a b a b: greedy paints a=0, b=0, then a=1, b=1 -> one change.
  const PaintShopSequence seq({1, 2, 1, 2});
  const auto g = greedy_paintshop(seq);
  EXPECT_EQ(g.changes, 1);
  EXPECT_EQ(paint_changes(seq, g.first_colors), 1);
  // a b a c c b: greedy paints 0 0 1 1 0 1 (three changes); painting b
  // opposite to a gives 0 1 1 1 0 0 (two changes).
  const PaintShopSequence hard({1, 2, 1, 3, 3, 2});
  EXPECT_EQ(greedy_paintshop(hard).changes, 3);
  EXPECT_EQ(std::lround(brute_force_minimum(paintshop_qubo(hard)).energy), 2);
}

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
#include <numeric>
#include <sstream>
#include <vector>

#include "dense_oracle.hpp"
#include "nisq/error.hpp"
#include "nisq/io.hpp"
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
  q.add_offset(rng.uniform(-1, 1));
  return q;
}

// Direct evaluation of the ordered-pair QUBO sum.
double qubo_direct(const QuboProblem& q, std::uint64_t index) {
  const int n = q.n_vars();
  double e = q.offset();
  for (int i = 0; i < n; ++i) {
    const double xi = (index >> i) & 1;
    e += q.c(i) * xi;
    for (int j = 0; j < n; ++j) e += q.q(i, j) * xi * ((index >> j) & 1);
  }
  return e;
}

}  // namespace

TEST(Qubo, AddProductUsesOrderedPairWeight) {
  QuboProblem q(2);
  q.add_product(0, 1, 3.0);
  EXPECT_DOUBLE_EQ(q.q(0, 1), 1.5);
  EXPECT_DOUBLE_EQ(q.q(1, 0), 1.5);
  EXPECT_DOUBLE_EQ(q.energy(3), 3.0);
  q.add_product(1, 1, 2.0);
  EXPECT_DOUBLE_EQ(q.c(1), 2.0);
}

TEST(Qubo, EnergyMatchesDirectSum) {
  for (int s = 0; s < 20; ++s) {
    const auto q = random_qubo(5, s);
    for (std::uint64_t i = 0; i < 32; ++i) EXPECT_NEAR(q.energy(i), qubo_direct(q, i), 1e-12);
  }
}

TEST(Qubo, ValidatesMatrix) {
  EXPECT_THROW(QuboProblem(2, {0, 1, 2, 0}, {0, 0}, 0), EncodingError);
  EXPECT_THROW(QuboProblem(2, {1, 0, 0, 0}, {0, 0}, 0), EncodingError);
  EXPECT_THROW(QuboProblem(2, {0, 0, 0}, {0, 0}, 0), SizeError);
}

TEST(Ising, EnergyOfSpinConfiguration) {
  IsingHamiltonian h(2);
  h.set_field(0, 0.5);
  h.set_coupling(0, 1, 1.0);
  // Index 0 is both spins down: -(0.5 * -1 + 2 * 1 * (-1)(-1)) = -1.5.
  EXPECT_DOUBLE_EQ(h.energy(0), -1.5);
  EXPECT_DOUBLE_EQ(h.energy(3), -2.5);
  EXPECT_DOUBLE_EQ(h.energy(1), 1.5);
}

TEST(Ising, QuboRoundTripPreservesEnergies) {
  for (int s = 0; s < 50; ++s) {
    const int n = 2 + s % 7;
    const auto q = random_qubo(n, 100 + s);
    const auto h = qubo_to_ising(q);
    const auto back = ising_to_qubo(h);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      EXPECT_NEAR(h.energy(i), q.energy(i), 1e-10);
      EXPECT_NEAR(back.energy(i), q.energy(i), 1e-10);
    }
  }
}

TEST(Ising, PauliTermsMatchDiagonal) {
  const auto h = qubo_to_ising(random_qubo(4, 3));
  const auto terms = ising_pauli_terms(h);
  const auto dense = dense_matrix(terms, 4);
  const auto diag = ising_to_diagonal(h);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_NEAR(dense[i * 16 + i].real(), diag[i], 1e-12);
    for (std::size_t j = 0; j < 16; ++j) {
      if (i == j) continue;
      EXPECT_EQ(dense[i * 16 + j], Complex(0.0, 0.0));
    }
  }
}

TEST(MaxCut, EnergyIsNegativeCut) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  const auto q = maxcut_qubo(edges, 4);
  for (std::uint64_t i = 0; i < 16; ++i) {
    EXPECT_NEAR(q.energy(i), -cut_size(edges, BitString::from_index(i, 4)), 1e-12);
  }
  EXPECT_THROW(maxcut_qubo(std::vector<Edge>{{0, 0}}, 2), EncodingError);
}

TEST(Sat, RandomKsatShape) {
  const auto f = random_ksat(10, 42, 3, 7);
  EXPECT_EQ(f.n_vars(), 10);
  EXPECT_EQ(f.n_clauses(), 42);
  for (const auto& c : f.clauses()) {
    ASSERT_EQ(c.size(), 3u);
    EXPECT_LT(std::abs(c[0]), std::abs(c[1]));
    EXPECT_LT(std::abs(c[1]), std::abs(c[2]));
  }
  const auto g = random_ksat(10, 42, 3, 7);
  EXPECT_EQ(f.clauses(), g.clauses());
}

TEST(Sat, LiteralSignsAreFair) {
  int positive = 0, total = 0;
  for (int s = 0; s < 50; ++s) {
    const auto f = random_ksat(20, 80, 3, s);
    for (const auto& c : f.clauses()) {
      for (int lit : c) positive += lit > 0;
      total += 3;
    }
  }
  // Binomial(12000, 1/2): 4 sigma is about 0.018.
  EXPECT_NEAR(static_cast<double>(positive) / total, 0.5, 0.02);
}

TEST(Sat, FormulaValidation) {
  EXPECT_THROW(CnfFormula(2, {{1, -1}}), EncodingError);
  EXPECT_THROW(CnfFormula(2, {{3}}), EncodingError);
  EXPECT_THROW(CnfFormula(2, {{}}), EncodingError);
  const CnfFormula merged(2, {{1, 1, 2}});
  EXPECT_EQ(merged.clauses()[0].size(), 2u);
}

TEST(Sat, MaxsatDiagonalCountsSatisfiedClauses) {
  const auto f = random_ksat(6, 20, 3, 11);
  const auto d = maxsat_diagonal(f);
  for (std::uint64_t i = 0; i < 64; ++i) {
    int sat = 0;
    for (const auto& c : f.clauses()) {
      sat += std::any_of(c.begin(), c.end(), [&](int lit) {
        const bool v = (i >> (std::abs(lit) - 1)) & 1;
        return lit > 0 ? v : !v;
      });
    }
    EXPECT_EQ(d[i], sat);
  }
}

TEST(Sat, MaxsatQuboMinOverAncillasIsUnsatCount) {
  for (int s = 0; s < 10; ++s) {
    const CnfFormula f(4, {{1, -2, 3}, {-1, 4}, {2}, {-3, -4, 1}, {2, 3, 4}});
    const auto formula = s == 0 ? f : random_ksat(4, 6, 3, s);
    const auto q = maxsat_qubo(formula);
    const int n = formula.n_vars();
    const int ancillas = q.n_vars() - n;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      double best = 1e300;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << ancillas); ++a) best = std::min(best, q.energy(x | (a << n)));
      EXPECT_NEAR(best, formula.n_clauses() - formula.count_satisfied(BitString::from_index(x, n)), 1e-9);
    }
  }
}

TEST(Sk, EnergyMatchesUpperTriangleSum) {
  const int n = 6;
  const auto h = sherrington_kirkpatrick(n, 4);
  for (int i = 0; i < n; ++i) EXPECT_EQ(h.field(i), 0.0);
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    double e = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        const double a = -2.0 * std::sqrt(static_cast<double>(n)) * h.coupling(i, k);
        e += a * (2.0 * ((idx >> i) & 1) - 1) * (2.0 * ((idx >> k) & 1) - 1) / std::sqrt(static_cast<double>(n));
      }
    EXPECT_NEAR(h.energy(idx), e, 1e-12);
  }
}

TEST(Sk, CouplingsAreStandardNormalAfterScaling) {
  const int n = 10;
  double sum = 0.0, sumsq = 0.0;
  int count = 0;
  for (int s = 0; s < 40; ++s) {
    const auto h = sherrington_kirkpatrick(n, s);
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        const double a = -2.0 * std::sqrt(static_cast<double>(n)) * h.coupling(i, k);
        sum += a;
        sumsq += a * a;
        ++count;
      }
  }
  EXPECT_NEAR(sum / count, 0.0, 0.1);
  EXPECT_NEAR(sumsq / count, 1.0, 0.1);
}

TEST(PaintShop, QuboEnergyEqualsColorChanges) {
  const PaintShopSequence seq({3, 1, 2, 3, 1, 2});
  EXPECT_EQ(seq.n_cars(), 3);
  const auto q = paintshop_qubo(seq);
  for (std::uint64_t x = 0; x < 8; ++x) {
    EXPECT_NEAR(q.energy(x), paint_changes(seq, BitString::from_index(x, 3)), 1e-12);
  }
  EXPECT_THROW(PaintShopSequence({1, 2, 1}), EncodingError);
  EXPECT_THROW(PaintShopSequence({1, 1, 1, 2, 2, 2}), EncodingError);
}

TEST(Tsp, FeasibleEnergyIsTourLength) {
  const int n = 4;
  Rng rng(2);
  std::vector<double> d(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = rng.uniform(1, 5);
  const auto q = tsp_qubo(d, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best_tour = 1e300;
  do {
    std::uint64_t idx = 0;
    double length = 0.0;
    for (int pos = 0; pos < n; ++pos) {
      idx |= std::uint64_t{1} << (perm[pos] * n + pos);
      length += d[perm[pos] * n + perm[(pos + 1) % n]];
    }
    EXPECT_NEAR(q.energy(idx), length, 1e-9);
    best_tour = std::min(best_tour, length);
  } while (std::next_permutation(perm.begin(), perm.end()));
  double best = 1e300;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << (n * n)); ++i) best = std::min(best, q.energy(i));
  EXPECT_NEAR(best, best_tour, 1e-9);
}

TEST(Io, DimacsRoundTrip) {
  std::istringstream in("c comment\np cnf 3 2\n1 -3 0\n2\n3 -1 0\n");
  const auto f = io::read_dimacs(in);
  EXPECT_EQ(f.n_vars(), 3);
  ASSERT_EQ(f.n_clauses(), 2);
  std::ostringstream out;
  io::write_dimacs(out, f);
  std::istringstream again(out.str());
  EXPECT_EQ(io::read_dimacs(again).clauses(), f.clauses());
  std::istringstream bad("p cnf 2 1\n1 5 0\n");
  EXPECT_THROW(io::read_dimacs(bad), EncodingError);
  std::istringstream no_header("1 2 0\n");
  EXPECT_THROW(io::read_dimacs(no_header), ParseError);
}

TEST(Io, EdgeListAndQuboJson) {
  std::istringstream in("# ring\n0 1\n1 2 # tail\n2 0\n");
  const auto g = io::read_edge_list(in);
  EXPECT_EQ(g.n_nodes, 3);
  EXPECT_EQ(g.edges.size(), 3u);
  std::istringstream bad("0\n");
  EXPECT_THROW(io::read_edge_list(bad), ParseError);

  const auto q = random_qubo(4, 9);
  std::ostringstream out;
  io::write_qubo_json(out, q);
  std::istringstream again(out.str());
  const auto r = io::read_qubo_json(again);
  for (std::uint64_t i = 0; i < 16; ++i) EXPECT_NEAR(r.energy(i), q.energy(i), 1e-12);
  std::istringstream broken("{\"n\": 2, \"q\": [[1, 0]]}");
  EXPECT_THROW(io::read_qubo_json(broken), ParseError);
  std::istringstream not_json("{\"n\": ");
  EXPECT_THROW(io::read_qubo_json(not_json), ParseError);
  EXPECT_THROW(io::read_dimacs(std::filesystem::path("/nonexistent/x.cnf")), IoError);
}

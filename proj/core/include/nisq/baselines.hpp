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

#pragma once

#include <cstdint>
#include <vector>

#include "nisq/problems.hpp"
#include "nisq/random.hpp"
#include "nisq/statevector.hpp"

namespace nisq {

struct MinimumResult {
  BitString assignment;
  double energy = 0.0;
};

/// Exhaustive minimum of a diagonal array (n <= 14). Ties go to the lowest
/// basis index.
MinimumResult brute_force_minimum(const DiagonalObservable& obs);

/// Exhaustive minimum of a QUBO (n <= 24) by Gray-code enumeration with
/// incremental energy updates. Energies within 1e-9 (relative to the
/// coefficient scale) count as ties and go to the lowest index; the reported
/// energy is re-evaluated exactly.
MinimumResult brute_force_minimum(const QuboProblem& q);

/// Counters from one DPLL run. A backtrack is a decision branch that failed.
struct SatRunStats {
  bool satisfiable = false;
  long long backtracks = 0;
  long long decisions = 0;
};

/// Depth-first backtracking with unit propagation (no pure-literal rule),
/// branching on the MOMS variable (most occurrences in minimum-width open
/// clauses). A backtrack is the undo of a failed first branch before its
/// decision is flipped, so backtracks <= decisions. n <= 60.
SatRunStats dpll_count(const CnfFormula& f);

enum class Cooling { Geometric, Linear };

struct SaSchedule {
  double t_initial = 1.0;
  double t_final = 1e-3;
  int n_steps = 10000;
  Cooling cooling = Cooling::Geometric;

  /// Throws DomainError unless t_initial >= t_final > 0 and n_steps >= 1.
  void validate() const;
  /// Geometric: t_initial * ratio^step with ratio = (t_final / t_initial)^(1/n_steps).
  /// Linear: straight line from t_initial (step 0) to t_final (last step).
  double temperature(int step) const;
};

/// Metropolis rule: delta <= 0 is always accepted, otherwise with
/// probability exp(-delta / temperature). Draws from rng only for uphill moves.
bool metropolis_accept(double delta, double temperature, Rng& rng);

struct SaResult {
  BitString best;
  double best_energy = 0.0;
  /// Energy of the current assignment after each step.
  std::vector<double> trace;
  long long uphill_proposed = 0;
  long long uphill_accepted = 0;
};

/// Single-bit-flip simulated annealing from a uniformly random start.
SaResult simulated_annealing(const QuboProblem& q, const SaSchedule& schedule, std::uint64_t seed);
SaResult simulated_annealing(const IsingHamiltonian& h, const SaSchedule& schedule, std::uint64_t seed);

struct PaintShopColoring {
  BitString first_colors;
  int changes = 0;
};

/// Left-to-right greedy: at a car's first occurrence reuse the previous
/// position's color (color 0 at the start); second occurrences are forced.
PaintShopColoring greedy_paintshop(const PaintShopSequence& s);

}  // namespace nisq

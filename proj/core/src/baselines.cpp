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

#include "nisq/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "nisq/error.hpp"

namespace nisq {

MinimumResult brute_force_minimum(const DiagonalObservable& obs) {
  if (obs.dim() == 0) throw SizeError("empty observable");
  const auto v = obs.values();
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return {BitString::from_index(best, obs.n_qubits()), v[best]};
}

MinimumResult brute_force_minimum(const QuboProblem& q) {
  const int n = q.n_vars();
  if (n > 24) throw SizeError("QUBO brute force supports n <= 24, got " + std::to_string(n));
  if (n == 0) return {BitString{}, q.offset()};

  double scale = std::abs(q.offset());
  for (int i = 0; i < n; ++i) {
    scale += std::abs(q.c(i));
    for (int j = 0; j < n; ++j) scale += std::abs(q.q(i, j));
  }
  const double tol = 1e-9 * std::max(1.0, scale);

  std::vector<std::uint8_t> x(n, 0);
  std::vector<double> field(n, 0.0);  // sum_j Q_ij x_j
  double energy = q.offset();
  std::uint64_t index = 0;
  double best_energy = energy;
  std::uint64_t best_index = 0;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int i = std::countr_zero(k);
    const double sign = x[i] ? -1.0 : 1.0;
    energy += sign * (q.c(i) + 2.0 * field[i]);
    x[i] ^= 1U;
    index ^= std::uint64_t{1} << i;
    for (int j = 0; j < n; ++j) field[j] += sign * q.q(j, i);
    if (energy < best_energy - tol || (energy <= best_energy + tol && index < best_index)) {
      best_energy = std::min(energy, best_energy);
      best_index = index;
    }
  }
  auto assignment = BitString::from_index(best_index, n);
  return {assignment, q.energy(assignment)};
}

namespace {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f) : f_(f), value_(f.n_vars() + 1, 0), score_(2 * (f.n_vars() + 1), 0.0) {}

  SatRunStats run() {
    stats_.satisfiable = search();
    return stats_;
  }

 private:
  bool literal_true(int lit) const { return value_[std::abs(lit)] == (lit > 0 ? 1 : -1); }

  void assign(int lit) {
    value_[std::abs(lit)] = lit > 0 ? 1 : -1;
    trail_.push_back(std::abs(lit));
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = 0;
      trail_.pop_back();
    }
  }

  // Returns false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : f_.clauses()) {
        int unassigned = 0;
        int last = 0;
        bool sat = false;
        for (int lit : clause) {
          if (value_[std::abs(lit)] == 0) {
            ++unassigned;
            last = lit;
          } else if (literal_true(lit)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  // MOMS: among the open clauses of minimum unassigned width, count each
  // variable's positive and negative occurrences and score pos * neg * 1024 +
  // pos + neg. Highest score wins (lowest index on ties); the more frequent
  // polarity is tried first (true on ties). Returns 0 when every clause is
  // satisfied.
  int choose_literal() {
    std::fill(score_.begin(), score_.end(), 0.0);
    open_width_.clear();
    int min_width = std::numeric_limits<int>::max();
    for (const auto& clause : f_.clauses()) {
      int unassigned = 0;
      bool sat = false;
      for (int lit : clause) {
        if (value_[std::abs(lit)] == 0) {
          ++unassigned;
        } else if (literal_true(lit)) {
          sat = true;
          break;
        }
      }
      open_width_.push_back(sat ? 0 : unassigned);
      if (!sat) min_width = std::min(min_width, unassigned);
    }
    if (min_width == std::numeric_limits<int>::max()) return 0;
    for (std::size_t c = 0; c < f_.clauses().size(); ++c) {
      if (open_width_[c] != min_width) continue;
      for (int lit : f_.clauses()[c]) {
        if (value_[std::abs(lit)] == 0) score_[2 * std::abs(lit) + (lit < 0 ? 1 : 0)] += 1.0;
      }
    }
    int best = 0;
    double best_score = -1.0;
    for (int v = 1; v <= f_.n_vars(); ++v) {
      if (value_[v] != 0) continue;
      const double pos = score_[2 * v];
      const double neg = score_[2 * v + 1];
      const double total = pos * neg * 1024.0 + pos + neg;
      if (total > best_score) {
        best_score = total;
        best = v;
      }
    }
    return score_[2 * best + 1] > score_[2 * best] ? -best : best;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    const int first = choose_literal();
    if (first == 0) return true;
    ++stats_.decisions;
    const std::size_t branch_mark = trail_.size();
    assign(first);
    if (search()) return true;
    // Undo the failed first branch and flip the decision.
    undo_to(branch_mark);
    ++stats_.backtracks;
    assign(-first);
    if (search()) return true;
    undo_to(mark);
    return false;
  }

  const CnfFormula& f_;
  std::vector<int> value_;
  std::vector<int> trail_;
  std::vector<double> score_;
  std::vector<int> open_width_;
  SatRunStats stats_;
};

}  // namespace

SatRunStats dpll_count(const CnfFormula& f) {
  if (f.n_vars() > 60) throw SizeError("dpll_count supports n_vars <= 60");
  return Dpll(f).run();
}

void SaSchedule::validate() const {
  if (!(t_final > 0.0) || !(t_initial >= t_final) || !std::isfinite(t_initial)) {
    throw DomainError("annealing schedule needs t_initial >= t_final > 0");
  }
  if (n_steps < 1) throw DomainError("annealing schedule needs n_steps >= 1");
}

double SaSchedule::temperature(int step) const {
  if (cooling == Cooling::Geometric) {
    const double ratio = std::pow(t_final / t_initial, 1.0 / n_steps);
    return t_initial * std::pow(ratio, step);
  }
  if (n_steps == 1) return t_initial;
  return t_initial + (t_final - t_initial) * static_cast<double>(step) / (n_steps - 1);
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform() < std::exp(-delta / temperature);
}

SaResult simulated_annealing(const QuboProblem& q, const SaSchedule& schedule, std::uint64_t seed) {
  schedule.validate();
  const int n = q.n_vars();
  if (n < 1) throw SizeError("simulated annealing needs at least one variable");
  Rng rng(seed);

  BitString x;
  x.bits.resize(n);
  for (auto& b : x.bits) b = rng.coin() ? 1 : 0;
  std::vector<double> field(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x.bits[j]) field[i] += q.q(i, j);

  double energy = q.energy(x);
  SaResult result;
  result.best = x;
  result.best_energy = energy;
  result.trace.reserve(schedule.n_steps);

  for (int step = 0; step < schedule.n_steps; ++step) {
    const double t = schedule.temperature(step);
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double sign = x.bits[i] ? -1.0 : 1.0;
    const double delta = sign * (q.c(i) + 2.0 * field[i]);
    if (delta > 0.0) ++result.uphill_proposed;
    if (metropolis_accept(delta, t, rng)) {
      if (delta > 0.0) ++result.uphill_accepted;
      x.bits[i] ^= 1U;
      energy += delta;
      for (int j = 0; j < n; ++j) field[j] += sign * q.q(j, i);
      if (energy < result.best_energy) {
        result.best_energy = energy;
        result.best = x;
      }
    }
    result.trace.push_back(energy);
  }
  result.best_energy = q.energy(result.best);
  return result;
}

SaResult simulated_annealing(const IsingHamiltonian& h, const SaSchedule& schedule, std::uint64_t seed) {
  return simulated_annealing(ising_to_qubo(h), schedule, seed);
}

PaintShopColoring greedy_paintshop(const PaintShopSequence& s) {
  PaintShopColoring out;
  out.first_colors.bits.assign(s.n_cars(), 0);
  int previous = -1;
  for (int p = 0; p < s.length(); ++p) {
    const int car = s.car_at(p);
    int colour;
    if (s.is_first(p)) {
      colour = previous < 0 ? 0 : previous;
      out.first_colors.bits[car] = static_cast<std::uint8_t>(colour);
    } else {
      colour = 1 - out.first_colors.bits[car];
    }
    if (previous >= 0 && colour != previous) ++out.changes;
    previous = colour;
  }
  return out;
}

}  // namespace nisq

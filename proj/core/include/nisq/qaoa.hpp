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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nisq/problems.hpp"
#include "nisq/statevector.hpp"

namespace nisq {

/// Depth-p angle vectors. gamma is periodic in [0, 2 pi), beta in [0, pi)
/// for integer costs, but any finite value is accepted.
struct QaoaParams {
  std::vector<double> gamma;
  std::vector<double> beta;

  int p() const noexcept { return static_cast<int>(gamma.size()); }
  /// Throws DomainError unless p >= 1, the lengths agree and entries are finite.
  void validate() const;
  /// gamma_1..gamma_p, beta_1..beta_p.
  std::vector<double> flatten() const;
  static QaoaParams from_flat(std::span<const double> flat);
  bool operator==(const QaoaParams&) const = default;
};

/// QAOA state for a cost C to be maximized, with H_I = -C:
///   e^{-i beta_p H_M} e^{-i gamma_p H_I} ... e^{-i beta_1 H_M} e^{-i gamma_1 H_I} |+>^n
/// and H_M = sum_n sigma_x^n, so each mixer is an X rotation by 2 beta on
/// every qubit. n <= 14.
StateVector qaoa_state(const DiagonalObservable& cost, const QaoaParams& params);

/// <C> = -<H_I> in the QAOA state.
double qaoa_expectation(const DiagonalObservable& cost, const QaoaParams& params);

enum class QaoaStrategy { GridThenLocal, MultistartLocal };

struct QaoaOptions {
  int p = 1;
  QaoaStrategy strategy = QaoaStrategy::MultistartLocal;
  /// Local searches (Nelder-Mead restarts).
  int starts = 10;
  /// Total expectation evaluations across the grid and all restarts.
  int budget = 20000;
  std::uint64_t seed = 0;
  /// Points per axis of the (gamma, beta) grid for GridThenLocal.
  int grid_points = 24;
  /// Replaces the first random start (MultistartLocal only).
  std::optional<QaoaParams> warm_start;
};

struct QaoaOutcome {
  QaoaParams best_params;
  double expectation = 0.0;
  /// <C> / C_max with C_max from exhaustive search; 1 when C_max == 0.
  double approximation_ratio = 0.0;
  double c_max = 0.0;
  /// |amplitude|^2 of the best state.
  std::vector<double> sample_distribution;
  int n_evaluations = 0;
  /// False when a local search ran out of budget before converging.
  bool converged = true;
};

/// Maximizes <C> over depth-p angles with Nelder-Mead local searches started
/// from random points or from the best points of a coarse grid. Equal values
/// (within 1e-12) are resolved toward the lexicographically smaller angles.
QaoaOutcome optimize_qaoa(const DiagonalObservable& cost, const QaoaOptions& options);

/// Ratio <C>/C_max given the exact maximum.
double approximation_ratio(double expectation, double c_max);

/// i.i.d. basis-state samples from |amplitude|^2.
std::vector<std::uint64_t> sample_indices(const StateVector& state, int n_samples, std::uint64_t seed);
std::vector<BitString> sample_bitstrings(const StateVector& state, int n_samples, std::uint64_t seed);

/// First-order Trotterization of H(t) = f(t) H_P + r(t) (-sum sigma_x) on
/// [0, T] with p slices, expressed as QAOA angles for the cost C = -H_P:
/// gamma_k = f(k dt) dt and beta_k = -r(k dt) dt, dt = T / p.
QaoaParams trotter_params(const std::function<double(double)>& f, const std::function<double(double)>& r,
                          double total_time, int p);

/// Appends an identity layer (gamma = beta = 0).
QaoaParams extend_depth(const QaoaParams& params);

struct HardnessRow {
  double ratio = 0.0;
  int p = 1;
  int instance = 0;
  std::uint64_t instance_seed = 0;
  int n_clauses = 0;
  double qaoa_ratio = 0.0;
  /// Maximum number of simultaneously satisfiable clauses.
  int sat_optimum = 0;
};

struct HardnessOptions {
  int starts = 10;
  int budget = 20000;
  int workers = 1;
};

/// Random 3-SAT MaxSAT instances at each clause/variable ratio
/// (m = max(1, round(ratio n))), optimized by QAOA at each depth. Depths are
/// run in increasing order per instance and each depth is warm-started from
/// the previous optimum with an identity layer appended. Rows are ordered by
/// (ratio, p, instance).
std::vector<HardnessRow> hardness_sweep_qaoa(int n, const std::vector<double>& ratios, std::vector<int> p_list,
                                             int instances, std::uint64_t seed, const HardnessOptions& options = {});

/// 1 - (1 - p_gate)^n_gates.
double gate_failure_probability(double p_gate, long long n_gates);

/// max over m of min(m, d(m)) for a profile width -> achievable depth.
int algorithmic_qubits(const std::map<int, int>& depth_profile);

}  // namespace nisq

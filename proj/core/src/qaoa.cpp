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

#include "nisq/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nisq/error.hpp"
#include "nisq/nelder_mead.hpp"
#include "nisq/parallel.hpp"
#include "nisq/random.hpp"

namespace nisq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kValueTie = 1e-12;

bool is_integer_valued(const DiagonalObservable& cost) {
  for (double v : cost.values()) {
    if (v != std::nearbyint(v)) return false;
  }
  return true;
}

double wrap(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0.0) r += period;
  // fmod can round a tiny negative input up to exactly `period`.
  return r >= period ? 0.0 : r;
}

/// Maps angles into the canonical domain without changing the state beyond a
/// global phase. beta has period pi for any cost; gamma has period 2 pi only
/// when every cost value is an integer.
QaoaParams canonical(QaoaParams params, bool wrap_gamma) {
  for (double& b : params.beta) b = wrap(b, std::numbers::pi);
  if (wrap_gamma) {
    for (double& g : params.gamma) g = wrap(g, kTwoPi);
  }
  return params;
}

struct Candidate {
  QaoaParams params;
  double value = -std::numeric_limits<double>::infinity();
};

/// True when a should replace b: higher expectation, or equal within
/// kValueTie and lexicographically smaller angles.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value > b.value + kValueTie) return true;
  if (a.value < b.value - kValueTie) return false;
  return a.params.flatten() < b.params.flatten();
}

}  // namespace

void QaoaParams::validate() const {
  if (gamma.empty()) throw DomainError("QAOA depth must be at least 1");
  if (gamma.size() != beta.size()) {
    throw DomainError("gamma has " + std::to_string(gamma.size()) + " entries but beta has " +
                      std::to_string(beta.size()));
  }
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (!std::isfinite(gamma[k]) || !std::isfinite(beta[k])) {
      throw DomainError("non-finite QAOA angle in layer " + std::to_string(k));
    }
  }
}

std::vector<double> QaoaParams::flatten() const {
  std::vector<double> flat(gamma);
  flat.insert(flat.end(), beta.begin(), beta.end());
  return flat;
}

QaoaParams QaoaParams::from_flat(std::span<const double> flat) {
  if (flat.size() % 2 != 0) throw DomainError("flat QAOA parameter vector must have even length");
  const std::size_t p = flat.size() / 2;
  QaoaParams params;
  params.gamma.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p));
  params.beta.assign(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end());
  return params;
}

StateVector qaoa_state(const DiagonalObservable& cost, const QaoaParams& params) {
  params.validate();
  const int n = cost.n_qubits();
  StateVector psi = StateVector::uniform_superposition(n);
  for (int k = 0; k < params.p(); ++k) {
    // e^{-i gamma H_I} with H_I = -C.
    psi = apply_diagonal_phase(std::move(psi), cost, -params.gamma[k]);
    for (int q = 0; q < n; ++q) psi = apply_axis_rotation(std::move(psi), q, Axis::X, 2.0 * params.beta[k]);
  }
  return psi;
}

double qaoa_expectation(const DiagonalObservable& cost, const QaoaParams& params) {
  return expectation_diagonal(qaoa_state(cost, params), cost);
}

double approximation_ratio(double expectation, double c_max) {
  if (c_max < 0.0) throw DomainError("approximation ratio needs a non-negative maximum, got " + std::to_string(c_max));
  if (c_max == 0.0) return 1.0;
  return expectation / c_max;
}

QaoaOutcome optimize_qaoa(const DiagonalObservable& cost, const QaoaOptions& options) {
  if (options.p < 1) throw DomainError("QAOA depth must be at least 1");
  if (options.starts < 1) throw DomainError("need at least one optimizer start");
  if (options.budget < 1) throw DomainError("evaluation budget must be positive");
  if (cost.n_qubits() < 1) throw SizeError("QAOA needs a non-empty cost");
  if (options.warm_start) {
    options.warm_start->validate();
    if (options.warm_start->p() != options.p) throw DomainError("warm start depth does not match p");
  }

  const int p = options.p;
  const bool wrap_gamma = is_integer_valued(cost);
  Rng rng(options.seed);
  QaoaOutcome out;
  bool converged = true;
  int used = 0;
  Candidate best;

  auto evaluate = [&](const QaoaParams& params) {
    ++used;
    Candidate c{canonical(params, wrap_gamma), qaoa_expectation(cost, params)};
    if (better(c, best)) best = c;
    return c.value;
  };

  std::vector<QaoaParams> seeds;
  if (options.strategy == QaoaStrategy::GridThenLocal) {
    // Layer-uniform grid: every layer gets the same (gamma, beta).
    const int g = std::max(options.grid_points, 1);
    std::vector<Candidate> grid;
    grid.reserve(static_cast<std::size_t>(g) * g);
    for (int i = 0; i < g && converged; ++i) {
      for (int j = 0; j < g; ++j) {
        if (used >= options.budget) {
          converged = false;
          break;
        }
        QaoaParams params{std::vector<double>(p, kTwoPi * i / g), std::vector<double>(p, std::numbers::pi * j / g)};
        const double v = evaluate(params);
        grid.push_back({std::move(params), v});
      }
    }
    std::stable_sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) { return better(a, b); });
    for (int s = 0; s < options.starts && s < static_cast<int>(grid.size()); ++s) seeds.push_back(grid[s].params);
  } else {
    for (int s = 0; s < options.starts; ++s) {
      if (s == 0 && options.warm_start) {
        seeds.push_back(*options.warm_start);
        continue;
      }
      QaoaParams params;
      for (int k = 0; k < p; ++k) params.gamma.push_back(rng.uniform(0.0, kTwoPi));
      for (int k = 0; k < p; ++k) params.beta.push_back(rng.uniform(0.0, std::numbers::pi));
      seeds.push_back(std::move(params));
    }
  }

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const int remaining = options.budget - used;
    if (remaining < 1) {
      converged = false;
      break;
    }
    const int share = std::max(1, remaining / static_cast<int>(seeds.size() - s));
    NelderMeadOptions nm;
    nm.max_evaluations = share;
    const auto result = nelder_mead_minimize(
        [&](std::span<const double> x) { return -evaluate(QaoaParams::from_flat(x)); }, seeds[s].flatten(), nm);
    converged = converged && result.converged;
  }

  out.best_params = best.params;
  out.expectation = best.value;
  out.c_max = cost.max();
  out.approximation_ratio = approximation_ratio(out.expectation, out.c_max);
  out.sample_distribution = qaoa_state(cost, best.params).probabilities();
  out.n_evaluations = used;
  out.converged = converged;
  return out;
}

std::vector<std::uint64_t> sample_indices(const StateVector& state, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("n_samples must be at least 1");
  const auto probs = state.probabilities();
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) cumulative[i] = (acc += probs[i]);
  Rng rng(seed);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n_samples));
  for (auto& index : out) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // Skip zero-probability states that share the final cumulative value.
    if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), acc);
    index = static_cast<std::uint64_t>(it - cumulative.begin());
  }
  return out;
}

std::vector<BitString> sample_bitstrings(const StateVector& state, int n_samples, std::uint64_t seed) {
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(std::max(n_samples, 0)));
  for (auto index : sample_indices(state, n_samples, seed))
    out.push_back(BitString::from_index(index, state.n_qubits()));
  return out;
}

QaoaParams trotter_params(const std::function<double(double)>& f, const std::function<double(double)>& r,
                          double total_time, int p) {
  if (p < 1) throw DomainError("Trotter depth must be at least 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw DomainError("total time must be positive and finite");
  const double dt = total_time / p;
  QaoaParams params;
  for (int k = 1; k <= p; ++k) {
    params.gamma.push_back(f(k * dt) * dt);
    params.beta.push_back(-r(k * dt) * dt);
  }
  params.validate();
  return params;
}

QaoaParams extend_depth(const QaoaParams& params) {
  QaoaParams out = params;
  out.gamma.push_back(0.0);
  out.beta.push_back(0.0);
  return out;
}

std::vector<HardnessRow> hardness_sweep_qaoa(int n, const std::vector<double>& ratios, std::vector<int> p_list,
                                             int instances, std::uint64_t seed, const HardnessOptions& options) {
  if (n < 3 || n > 10) throw SizeError("hardness sweep supports 3 <= n <= 10, got " + std::to_string(n));
  if (instances < 1) throw DomainError("need at least one instance");
  if (p_list.empty()) throw DomainError("empty depth list");
  std::sort(p_list.begin(), p_list.end());
  p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
  if (p_list.front() < 1) throw DomainError("depths must be at least 1");
  for (double ratio : ratios) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw DomainError("clause ratios must be positive");
  }

  const std::size_t n_inst = static_cast<std::size_t>(instances);
  const std::size_t n_p = p_list.size();
  std::vector<HardnessRow> rows(ratios.size() * n_p * n_inst);

  parallel_for(ratios.size() * n_inst, options.workers, [&](std::size_t task) {
    const std::size_t ri = task / n_inst;
    const std::size_t inst = task % n_inst;
    const int m = std::max(1, static_cast<int>(std::lround(ratios[ri] * n)));
    const std::uint64_t instance_seed = derive_seed(seed, ri, inst);
    const CnfFormula formula = random_ksat(n, m, 3, instance_seed);
    const DiagonalObservable cost = maxsat_diagonal(formula);
    const int optimum = static_cast<int>(std::lround(cost.max()));

    std::optional<QaoaParams> previous;
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      QaoaOptions qo;
      qo.p = p_list[pi];
      qo.starts = options.starts;
      qo.budget = options.budget;
      qo.seed = derive_seed(instance_seed, static_cast<std::uint64_t>(qo.p), 1);
      if (previous) {
        QaoaParams warm = *previous;
        while (warm.p() < qo.p) warm = extend_depth(warm);
        qo.warm_start = std::move(warm);
      }
      const QaoaOutcome outcome = optimize_qaoa(cost, qo);
      previous = outcome.best_params;

      HardnessRow& row = rows[(ri * n_p + pi) * n_inst + inst];
      row.ratio = ratios[ri];
      row.p = qo.p;
      row.instance = static_cast<int>(inst);
      row.instance_seed = instance_seed;
      row.n_clauses = m;
      row.qaoa_ratio = outcome.approximation_ratio;
      row.sat_optimum = optimum;
    }
  });
  return rows;
}

double gate_failure_probability(double p_gate, long long n_gates) {
  if (!(p_gate >= 0.0 && p_gate <= 1.0)) throw DomainError("gate error probability must lie in [0, 1]");
  if (n_gates < 0) throw DomainError("gate count must be non-negative");
  if (n_gates == 0 || p_gate == 0.0) return 0.0;
  if (p_gate == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n_gates) * std::log1p(-p_gate));
}

int algorithmic_qubits(const std::map<int, int>& depth_profile) {
  if (depth_profile.empty()) throw DomainError("empty depth profile");
  int best = std::numeric_limits<int>::min();
  for (const auto& [width, depth] : depth_profile) best = std::max(best, std::min(width, depth));
  return best;
}

}  // namespace nisq

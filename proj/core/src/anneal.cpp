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

#include "nisq/anneal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nisq/error.hpp"
#include "nisq/parallel.hpp"
#include "nisq/random.hpp"

namespace nisq {

namespace {

constexpr int kMaxAnnealQubits = 12;

void check_anneal_size(int n) {
  if (n < 1 || n > kMaxAnnealQubits) {
    throw SizeError("annealing supports 1.." + std::to_string(kMaxAnnealQubits) + " qubits, got " + std::to_string(n));
  }
}

double bandwidth_of(const DiagonalObservable& problem) { return problem.max() - problem.min(); }

}  // namespace

std::vector<Complex> MixerOperator::apply(const StateVector& state) const {
  if (state.n_qubits() != n_qubits) throw SizeError("mixer and state sizes differ");
  std::vector<Complex> out(state.dim());
  apply_mixer(kind, state.amplitudes(), out);
  return out;
}

MixerOperator mixer_hamiltonian(MixerKind kind, int n_qubits) {
  check_anneal_size(n_qubits);
  return MixerOperator{kind, n_qubits};
}

AnnealProtocol AnnealProtocol::protocol1(double g) {
  AnnealProtocol p;
  p.schedule = ScheduleKind::Protocol1;
  p.mixer = MixerKind::PlusProjector;
  p.strength = g;
  return p;
}

AnnealProtocol AnnealProtocol::protocol2(double g) {
  AnnealProtocol p;
  p.schedule = ScheduleKind::Protocol2;
  p.mixer = MixerKind::TransverseField;
  p.strength = g;
  return p;
}

AnnealProtocol AnnealProtocol::protocol3() {
  AnnealProtocol p;
  p.schedule = ScheduleKind::Protocol3;
  p.mixer = MixerKind::PlusProjector;
  return p;
}

AnnealProtocol AnnealProtocol::table_protocol(int index, double g) {
  switch (index) {
    case 1:
      return protocol1(g);
    case 2:
      return protocol2(g);
    case 3: {
      auto p = protocol3();
      p.strength = g;  // recorded only; the printed schedule has no free strength
      return p;
    }
    default:
      throw DomainError("unknown annealing protocol " + std::to_string(index));
  }
}

AnnealProtocol AnnealProtocol::linear(double total_time, MixerKind mixer) {
  return generic([total_time](double t) { return t / total_time; },
                 [total_time](double t) { return 1.0 - t / total_time; }, total_time, mixer);
}

AnnealProtocol AnnealProtocol::generic(std::function<double(double)> f, std::function<double(double)> r,
                                       double total_time, MixerKind mixer) {
  AnnealProtocol p;
  p.schedule = ScheduleKind::Generic;
  p.mixer = mixer;
  p.t_start = 0.0;
  p.t_end = total_time;
  p.f = std::move(f);
  p.r = std::move(r);
  return p;
}

void AnnealProtocol::validate() const {
  if (schedule == ScheduleKind::Generic) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("annealing time T must be positive");
    if (!f || !r) throw DomainError("generic schedule needs both f(t) and r(t)");
    constexpr double tol = 1e-9;
    if (std::abs(f(0.0)) > tol || std::abs(r(t_end)) > tol || std::abs(f(t_end) - 1.0) > tol ||
        std::abs(r(0.0) - 1.0) > tol) {
      throw DomainError("generic schedule must satisfy f(0) = r(T) = 0 and f(T) = r(0) = 1");
    }
    return;
  }
  if (!(t_start > 0.0)) {
    throw DomainError("schedule singularity at t = 0 lies inside [" + std::to_string(t_start) + ", " +
                      std::to_string(t_end) + "]");
  }
  if (!(t_end > t_start) || !std::isfinite(t_end)) throw DomainError("annealing window needs t_end > t_start");
  if (!std::isfinite(strength)) throw DomainError("schedule strength must be finite");
}

HamiltonianWeights AnnealProtocol::weights(double t, int n_qubits, double bandwidth) const {
  double g = 0.0;
  switch (schedule) {
    case ScheduleKind::Generic:
      return {f(t), r(t)};
    case ScheduleKind::Protocol1:
      g = -strength / t;
      break;
    case ScheduleKind::Protocol2:
      g = strength / (n_qubits * t);
      break;
    case ScheduleKind::Protocol3:
      if (!(bandwidth > 0.0)) throw DomainError("protocol 3 needs a problem with non-zero bandwidth");
      g = -1.0 / (bandwidth * t * t);
      break;
  }
  return {1.0, flip_sign ? -g : g};
}

std::string AnnealProtocol::name() const {
  switch (schedule) {
    case ScheduleKind::Protocol1:
      return "protocol1";
    case ScheduleKind::Protocol2:
      return "protocol2";
    case ScheduleKind::Protocol3:
      return "protocol3";
    case ScheduleKind::Generic:
      break;
  }
  return "generic";
}

std::vector<std::uint64_t> ground_space(const DiagonalObservable& problem, double tol) {
  const double lo = problem.min();
  const double scale = std::max(1.0, std::abs(lo));
  std::vector<std::uint64_t> idx;
  for (std::size_t i = 0; i < problem.dim(); ++i) {
    if (problem[i] - lo <= tol * scale) idx.push_back(i);
  }
  return idx;
}

namespace {

AnnealResult anneal_once(const DiagonalObservable& problem, const AnnealProtocol& protocol, double dt) {
  const int n = problem.n_qubits();
  const double bw = bandwidth_of(problem);
  DrivenHamiltonian h;
  h.problem = problem;
  h.mixer = protocol.mixer;
  h.weights = [&protocol, n, bw](double t) { return protocol.weights(t, n, bw); };

  auto final_state =
      evolve_time_dependent(StateVector::uniform_superposition(n), h, protocol.begin(), protocol.end(), dt);
  const auto ground = ground_space(problem);
  AnnealResult result{std::move(final_state)};
  result.ground_degeneracy = static_cast<int>(ground.size());
  result.ground_state_fidelity = std::min(1.0, subspace_population(result.final_state, ground));
  result.excitation_number = std::max(0.0, 1.0 - result.ground_state_fidelity);
  result.residual_energy = expectation_diagonal(result.final_state, problem) - problem.min();
  return result;
}

}  // namespace

AnnealResult run_anneal(const DiagonalObservable& problem, const AnnealProtocol& protocol, double dt,
                        const AnnealOptions& options) {
  check_anneal_size(problem.n_qubits());
  protocol.validate();
  auto result = anneal_once(problem, protocol, dt);
  if (options.check_convergence) {
    const auto half = anneal_once(problem, protocol, 0.5 * dt);
    const double change = std::abs(half.ground_state_fidelity - result.ground_state_fidelity);
    if (change >= 1e-4) {
      throw IntegrationError(
          "step-halving changed the fidelity by " + std::to_string(change) + " (dt=" + std::to_string(dt) + ")",
          protocol.end());
    }
  }
  return result;
}

AnnealResult run_anneal(const IsingHamiltonian& problem, const AnnealProtocol& protocol, double dt,
                        const AnnealOptions& options) {
  check_anneal_size(problem.n_spins());
  return run_anneal(ising_to_diagonal(problem), protocol, dt, options);
}

DiagonalObservable random_energy_problem(int n_qubits, std::uint64_t seed) {
  check_anneal_size(n_qubits);
  Rng rng(seed);
  std::vector<double> values(std::size_t{1} << n_qubits);
  for (auto& v : values) v = rng.uniform();
  return DiagonalObservable(std::move(values));
}

std::vector<ProtocolRow> protocol_comparison(int n, int n_instances, const std::vector<double>& g_grid,
                                             std::uint64_t seed, const ProtocolComparisonOptions& options) {
  if (n < 1 || n > 10) throw SizeError("protocol comparison supports n <= 10");
  if (n_instances < 1 || g_grid.empty() || options.protocols.empty()) {
    throw DomainError("protocol comparison needs instances, a g grid and protocols");
  }
  const std::size_t n_g = g_grid.size();
  const std::size_t n_inst = static_cast<std::size_t>(n_instances);
  std::vector<ProtocolRow> rows(options.protocols.size() * n_g * n_inst);
  parallel_for(rows.size(), options.workers, [&](std::size_t task) {
    const std::size_t instance = task % n_inst;
    const std::size_t gi = (task / n_inst) % n_g;
    const std::size_t pi = task / (n_inst * n_g);
    const int protocol_index = options.protocols[pi];
    const std::uint64_t instance_seed = derive_seed(seed, 0, instance);
    const auto problem = random_energy_problem(n, instance_seed);
    const auto result = run_anneal(problem, AnnealProtocol::table_protocol(protocol_index, g_grid[gi]), options.dt);
    rows[task] = ProtocolRow{protocol_index,
                             g_grid[gi],
                             static_cast<int>(instance),
                             instance_seed,
                             n,
                             result.excitation_number,
                             result.ground_state_fidelity,
                             result.residual_energy};
  });
  return rows;
}

double mean_excitation(const std::vector<ProtocolRow>& rows, int protocol, double g) {
  double sum = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    if (r.protocol == protocol && r.g == g) {
      sum += r.excitation;
      ++count;
    }
  }
  if (count == 0) throw DomainError("no rows for the requested protocol and g");
  return sum / count;
}

namespace {

class GapScanner {
 public:
  GapScanner(const DiagonalObservable& problem, const AnnealProtocol& protocol)
      : problem_(problem), protocol_(protocol), dim_(problem.dim()), bandwidth_(bandwidth_of(problem)) {
    std::vector<double> sorted(problem.values().begin(), problem.values().end());
    std::sort(sorted.begin(), sorted.end());
    degeneracy_ = count_ground_degeneracy(sorted);
    mixer_.assign(dim_ * dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        if (protocol.mixer == MixerKind::TransverseField) {
          mixer_[i * dim_ + j] = std::popcount(i ^ j) == 1 ? -1.0 : 0.0;
        } else if (protocol.mixer == MixerKind::PlusProjector) {
          mixer_[i * dim_ + j] = 1.0 / static_cast<double>(dim_);
        }
      }
    }
    sorted_problem_ = std::move(sorted);
  }

  double gap(double t) {
    const auto w = protocol_.weights(t, problem_.n_qubits(), bandwidth_);
    std::vector<Complex> h(dim_ * dim_);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = w.mixer * mixer_[k];
    for (std::size_t i = 0; i < dim_; ++i) h[i * dim_ + i] += w.problem * problem_[i];
    const auto ev = hermitian_eigenvalues(h, dim_);
    const std::size_t upper = degeneracy_ < static_cast<int>(dim_) ? static_cast<std::size_t>(degeneracy_) : 1;
    return std::max(0.0, ev[upper] - ev[0]);
  }

  int degeneracy() const { return degeneracy_; }
  const std::vector<double>& sorted_problem() const { return sorted_problem_; }
  double bandwidth() const { return bandwidth_; }

 private:
  const DiagonalObservable& problem_;
  const AnnealProtocol& protocol_;
  std::size_t dim_;
  double bandwidth_;
  int degeneracy_ = 1;
  std::vector<double> mixer_;
  std::vector<double> sorted_problem_;
};

}  // namespace

SpectrumReport min_gap_scan(const DiagonalObservable& problem, const AnnealProtocol& protocol, int n_points) {
  if (problem.n_qubits() > kMaxDenseQubits) throw SizeError("gap scans support n <= 10");
  if (n_points < 3) throw DomainError("gap scan needs at least 3 grid points");
  protocol.validate();
  GapScanner scanner(problem, protocol);

  const bool log_grid = protocol.schedule != ScheduleKind::Generic;
  const double lo = log_grid ? std::log(protocol.begin()) : protocol.begin();
  const double hi = log_grid ? std::log(protocol.end()) : protocol.end();
  auto time_at = [&](double u) { return log_grid ? std::exp(u) : u; };

  std::vector<double> grid(n_points);
  std::vector<double> gaps(n_points);
  for (int k = 0; k < n_points; ++k) {
    grid[k] = lo + (hi - lo) * k / (n_points - 1);
    gaps[k] = scanner.gap(time_at(grid[k]));
  }

  SpectrumReport report;
  report.eigenvalues = scanner.sorted_problem();
  report.bandwidth = scanner.bandwidth();
  report.ground_degeneracy = scanner.degeneracy();

  int best = 0;
  for (int k = 1; k < n_points; ++k) {
    if (gaps[k] < gaps[best]) best = k;
    const double smaller = std::min(gaps[k], gaps[k - 1]);
    if (std::abs(gaps[k] - gaps[k - 1]) > 0.5 * smaller) report.coarse_grid = true;
  }
  report.min_gap = gaps[best];
  report.gap_time = time_at(grid[best]);

  // Golden-section refinement inside the bracketing cells.
  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, n_points - 1)];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double gc = scanner.gap(time_at(c));
  double gd = scanner.gap(time_at(d));
  for (int it = 0; it < 40; ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = scanner.gap(time_at(c));
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = scanner.gap(time_at(d));
    }
  }
  const double refined = std::min(gc, gd);
  if (refined < report.min_gap) {
    report.min_gap = refined;
    report.gap_time = time_at(gc < gd ? c : d);
  }
  return report;
}

SpectrumReport min_gap_scan(const IsingHamiltonian& problem, const AnnealProtocol& protocol, int n_points) {
  if (problem.n_spins() > kMaxDenseQubits) throw SizeError("gap scans support n <= 10");
  return min_gap_scan(ising_to_diagonal(problem), protocol, n_points);
}

}  // namespace nisq

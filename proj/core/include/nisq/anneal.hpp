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
#include <string>
#include <vector>

#include "nisq/evolution.hpp"
#include "nisq/problems.hpp"
#include "nisq/spectrum.hpp"
#include "nisq/statevector.hpp"

namespace nisq {

/// Matrix-free view of a driving Hamiltonian on n qubits.
struct MixerOperator {
  MixerKind kind = MixerKind::TransverseField;
  int n_qubits = 1;

  std::vector<Complex> apply(const StateVector& state) const;
  double expectation(const StateVector& state) const { return mixer_expectation(state, kind); }
};

/// Transverse field -sum sigma_x or the projector |+><+|. n <= 12.
MixerOperator mixer_hamiltonian(MixerKind kind, int n_qubits);

enum class ScheduleKind {
  /// g(t) = -g / t with the projector mixer.
  Protocol1,
  /// g(t) = g / (N t) with the transverse field.
  Protocol2,
  /// g(t) = -1 / (dE_I t^2) with the projector mixer; dE_I is the problem bandwidth.
  Protocol3,
  /// H(t) = f(t) H_I + r(t) H_M on [0, T] with f(0) = r(T) = 0, f(T) = r(0) = 1.
  Generic,
};

/// Annealing schedule. The three named protocols use the reduced form
/// H(t) = H_I + g(t) H_M on [t_start, t_end]; the mixer signs follow the
/// protocol table as printed, and `flip_sign` negates g(t).
struct AnnealProtocol {
  ScheduleKind schedule = ScheduleKind::Generic;
  MixerKind mixer = MixerKind::TransverseField;
  double strength = 1.0;
  double t_start = 0.05;
  double t_end = 50.0;
  bool flip_sign = false;
  std::function<double(double)> f;
  std::function<double(double)> r;

  static AnnealProtocol protocol1(double g);
  static AnnealProtocol protocol2(double g);
  static AnnealProtocol protocol3();
  static AnnealProtocol table_protocol(int index, double g);
  /// f(t) = t/T, r(t) = 1 - t/T.
  static AnnealProtocol linear(double total_time, MixerKind mixer = MixerKind::TransverseField);
  static AnnealProtocol generic(std::function<double(double)> f, std::function<double(double)> r, double total_time,
                                MixerKind mixer = MixerKind::TransverseField);

  /// Integration window: [0, t_end] for Generic, [t_start, t_end] otherwise.
  double begin() const { return schedule == ScheduleKind::Generic ? 0.0 : t_start; }
  double end() const { return t_end; }

  /// Throws DomainError on a broken schedule (endpoint conditions for the
  /// generic pair, 1/t singularity inside the window, t_end <= begin).
  void validate() const;

  /// Weights of H_I and H_M at time t for an n-qubit problem of bandwidth dE_I.
  HamiltonianWeights weights(double t, int n_qubits, double bandwidth) const;

  std::string name() const;
};

struct AnnealResult {
  StateVector final_state;
  /// Population of the (possibly degenerate) ground space of H_I.
  double ground_state_fidelity = 0.0;
  /// <H_I>_final - E_ground.
  double residual_energy = 0.0;
  /// 1 - ground-space population.
  double excitation_number = 0.0;
  int ground_degeneracy = 1;
};

struct AnnealOptions {
  /// Re-run at dt/2 and throw IntegrationError when the ground-space
  /// fidelity moves by 1e-4 or more.
  bool check_convergence = false;
};

/// Starts in |+>^n, the ground state of the initial driving term, and
/// integrates the protocol with RK4 at step dt. n <= 12.
AnnealResult run_anneal(const DiagonalObservable& problem, const AnnealProtocol& protocol, double dt,
                        const AnnealOptions& options = {});
AnnealResult run_anneal(const IsingHamiltonian& problem, const AnnealProtocol& protocol, double dt,
                        const AnnealOptions& options = {});

/// Indices of basis states within tol of the minimum.
std::vector<std::uint64_t> ground_space(const DiagonalObservable& problem, double tol = 1e-9);

/// Maximal-complexity problem: i.i.d. uniform energies in [0, 1).
DiagonalObservable random_energy_problem(int n_qubits, std::uint64_t seed);

struct ProtocolRow {
  int protocol = 1;
  double g = 0.0;
  int instance = 0;
  std::uint64_t instance_seed = 0;
  int n = 0;
  double excitation = 0.0;
  double fidelity = 0.0;
  double residual_energy = 0.0;
};

struct ProtocolComparisonOptions {
  double dt = 1e-3;
  int workers = 1;
  std::vector<int> protocols = {1, 2, 3};
};

/// Runs every protocol at every g on n_instances random-energy problems.
/// Instance k uses derive_seed(seed, 0, k) for every protocol and g, so the
/// comparison is matched. Rows are ordered by (protocol, g index, instance).
std::vector<ProtocolRow> protocol_comparison(int n, int n_instances, const std::vector<double>& g_grid,
                                             std::uint64_t seed, const ProtocolComparisonOptions& options = {});

/// Mean excitation of the rows for one (protocol, g) cell.
double mean_excitation(const std::vector<ProtocolRow>& rows, int protocol, double g);

/// Diagonalizes H(t) on n_points schedule times (log-spaced for the 1/t
/// protocols, uniform for Generic), refines around the smallest gap, and
/// reports the minimum gap between the lowest level and the first level
/// above the d lowest, where d is the ground degeneracy of H_I (for a fully
/// degenerate H_I the plain first gap is used). eigenvalues and bandwidth
/// describe H_I. n <= 10.
SpectrumReport min_gap_scan(const DiagonalObservable& problem, const AnnealProtocol& protocol, int n_points);
SpectrumReport min_gap_scan(const IsingHamiltonian& problem, const AnnealProtocol& protocol, int n_points);

}  // namespace nisq

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

#include <functional>
#include <span>
#include <vector>

#include "nisq/statevector.hpp"

namespace nisq {

/// Driving term of an annealing Hamiltonian.
///   TransverseField: H_M = -sum_n sigma_x^n, ground state |+>^n with energy -n.
///   PlusProjector:   H_M = |+><+| (rank one, eigenvalues 1 and 0).
enum class MixerKind { None, TransverseField, PlusProjector };

/// out = H_M psi, matrix-free. out must have the same length as psi.
void apply_mixer(MixerKind kind, std::span<const Complex> psi, std::span<Complex> out);

/// exp(-i theta H_M) |psi>, exact.
StateVector apply_mixer_exponential(StateVector state, MixerKind kind, double theta);

/// <psi|H_M|psi>.
double mixer_expectation(const StateVector& state, MixerKind kind);

/// Instantaneous coefficients of H(t) = problem * H_P + mixer * H_M.
struct HamiltonianWeights {
  double problem = 1.0;
  double mixer = 0.0;
};

/// H(t) = w_p(t) diag(problem) + w_m(t) H_M.
struct DrivenHamiltonian {
  DiagonalObservable problem;
  MixerKind mixer = MixerKind::None;
  std::function<HamiltonianWeights(double)> weights;
};

/// Integrates i d/dt psi = H(t) psi (hbar = 1) from t0 to t1 with fixed-step
/// RK4, renormalizing after every step. The step is shrunk so that an integer
/// number of steps lands exactly on t1.
///
/// Throws DomainError for dt <= 0 or t1 <= t0 and IntegrationError when H(t)
/// is not finite at a sampled time.
StateVector evolve_time_dependent(StateVector state, const DrivenHamiltonian& hamiltonian, double t0, double t1,
                                  double dt);

enum class ProductOrder { First, Second };

/// Product-formula approximation of exp(-i T (a H_P + b H_M)) with `steps`
/// slices. First order is e^{-i a H_P dt} e^{-i b H_M dt} per slice; second
/// order is the symmetric split.
StateVector product_formula_evolve(StateVector state, const DiagonalObservable& problem, MixerKind mixer,
                                   double problem_weight, double mixer_weight, double total_time, int steps,
                                   ProductOrder order);

}  // namespace nisq

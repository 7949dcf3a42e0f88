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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nisq/statevector.hpp"

namespace nisq {

/// coefficient * P_{q1} P_{q2} ... with strictly increasing qubit indices.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<std::pair<int, Axis>> axes;
};

/// Throws IndexError unless qubit indices are strictly increasing and < n_qubits.
void validate_pauli_term(const PauliTerm& term, int n_qubits);

/// H|psi> for H = sum of terms. The result is not normalized.
std::vector<Complex> apply_pauli_sum(std::span<const PauliTerm> terms, std::span<const Complex> psi, int n_qubits);

/// Dense row-major 2^n x 2^n matrix of the Pauli sum.
std::vector<Complex> dense_matrix(std::span<const PauliTerm> terms, int n_qubits);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double min_gap = 0.0;
  double bandwidth = 0.0;
  /// Number of eigenvalues within tolerance of the lowest one.
  int ground_degeneracy = 1;
  /// Set by schedule scans whose gap changed by more than 50% between
  /// neighbouring grid points.
  bool coarse_grid = false;
  /// Schedule time at which min_gap was attained (scans only).
  double gap_time = 0.0;
};

/// Eigenvalues (ascending) of a dense Hermitian row-major matrix.
std::vector<double> hermitian_eigenvalues(std::span<const Complex> matrix, std::size_t dim);

/// Full spectrum of a Pauli-sum Hamiltonian on n_qubits <= 10.
/// min_gap is eigenvalues[1] - eigenvalues[0], so it is 0 for a degenerate
/// ground level.
SpectrumReport exact_spectrum(std::span<const PauliTerm> hamiltonian, int n_qubits);

/// Counts eigenvalues within tol of the smallest one (input sorted ascending).
int count_ground_degeneracy(std::span<const double> sorted_eigenvalues, double tol = 1e-9);

}  // namespace nisq

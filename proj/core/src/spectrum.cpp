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

#include "nisq/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nisq/error.hpp"

namespace nisq {

void validate_pauli_term(const PauliTerm& term, int n_qubits) {
  int previous = -1;
  for (const auto& [qubit, axis] : term.axes) {
    if (qubit <= previous || qubit >= n_qubits) {
      throw IndexError("Pauli term qubit indices must be strictly increasing and < " + std::to_string(n_qubits));
    }
    previous = qubit;
  }
}

std::vector<Complex> apply_pauli_sum(std::span<const PauliTerm> terms, std::span<const Complex> psi, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (psi.size() != dim) {
    throw SizeError("vector length does not match 2^n_qubits");
  }
  std::vector<Complex> out(dim);
  for (const auto& term : terms) {
    validate_pauli_term(term, n_qubits);
    std::size_t flip = 0;
    std::size_t zmask = 0;
    std::size_t ymask = 0;
    for (const auto& [q, axis] : term.axes) {
      const std::size_t bit = std::size_t{1} << q;
      if (axis == Axis::X) flip |= bit;
      if (axis == Axis::Y) {
        flip |= bit;
        ymask |= bit;
      }
      if (axis == Axis::Z) zmask |= bit;
    }
    // Y = i X Z: on input |b>, Y|b> = i (-1)^b |b xor 1>.
    const int n_y = std::popcount(ymask);
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex y_phase = kIPow[n_y % 4];
    for (std::size_t i = 0; i < dim; ++i) {
      const int sign_bits = std::popcount(i & (zmask | ymask));
      const double sign = (sign_bits & 1) ? -1.0 : 1.0;
      out[i ^ flip] += term.coefficient * sign * y_phase * psi[i];
    }
  }
  return out;
}

std::vector<Complex> dense_matrix(std::span<const PauliTerm> terms, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<Complex> m(dim * dim);
  std::vector<Complex> e(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::fill(e.begin(), e.end(), Complex{});
    e[col] = 1.0;
    const auto column = apply_pauli_sum(terms, e, n_qubits);
    for (std::size_t row = 0; row < dim; ++row) m[row * dim + col] = column[row];
  }
  return m;
}

std::vector<double> hermitian_eigenvalues(std::span<const Complex> matrix, std::size_t dim) {
  if (matrix.size() != dim * dim) {
    throw SizeError("matrix storage does not match dimension");
  }
  bool real = true;
  for (const auto& z : matrix) {
    if (z.imag() != 0.0) {
      real = false;
      break;
    }
  }
  Eigen::VectorXd ev;
  if (real) {
    Eigen::MatrixXd a(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a(r, c) = matrix[r * dim + c].real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    ev = solver.eigenvalues();
  } else {
    Eigen::MatrixXcd a(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a(r, c) = matrix[r * dim + c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    ev = solver.eigenvalues();
  }
  return {ev.data(), ev.data() + ev.size()};
}

int count_ground_degeneracy(std::span<const double> sorted_eigenvalues, double tol) {
  if (sorted_eigenvalues.empty()) return 0;
  const double scale = std::max(1.0, std::abs(sorted_eigenvalues.front()));
  int count = 0;
  for (double e : sorted_eigenvalues) {
    if (e - sorted_eigenvalues.front() <= tol * scale)
      ++count;
    else
      break;
  }
  return count;
}

SpectrumReport exact_spectrum(std::span<const PauliTerm> hamiltonian, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw SizeError("dense diagonalization supports 1.." + std::to_string(kMaxDenseQubits) + " qubits, got " +
                    std::to_string(n_qubits));
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  SpectrumReport report;
  report.eigenvalues = hermitian_eigenvalues(dense_matrix(hamiltonian, n_qubits), dim);
  report.min_gap = std::max(0.0, report.eigenvalues[1] - report.eigenvalues[0]);
  report.bandwidth = report.eigenvalues.back() - report.eigenvalues.front();
  report.ground_degeneracy = count_ground_degeneracy(report.eigenvalues);
  return report;
}

}  // namespace nisq

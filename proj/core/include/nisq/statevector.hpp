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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nisq {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 14;
inline constexpr int kMaxDenseQubits = 10;

enum class Axis { X, Y, Z };

/// Real eigenvalue per computational basis state: values[i] is the
/// eigenvalue on |i>. Length must be a power of two.
class DiagonalObservable {
 public:
  DiagonalObservable() = default;
  explicit DiagonalObservable(std::vector<double> values);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const;
  double max() const;

 private:
  std::vector<double> values_;
  int n_qubits_ = 0;
};

/// Dense state of n_qubits (1..14) qubits. Qubit q is bit q of the basis
/// index, so qubit 0 is the least significant bit.
///
/// Every public operation leaves the state normalized to 1e-10. The type
/// is a value: gates take the state by value and return the result.
class StateVector {
 public:
  /// Empty placeholder (zero qubits); only useful as a target for assignment.
  StateVector() = default;

  static StateVector uniform_superposition(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index);
  /// Normalizes the given amplitudes. Throws SizeError when the length is
  /// not 2^n for n in 1..14 and DomainError for a zero or non-finite norm.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

  /// Moves the amplitude buffer out, leaving the state empty.
  std::vector<Complex> take_amplitudes() && { return std::move(amps_); }

 private:
  StateVector(std::vector<Complex> amps, int n_qubits) : amps_(std::move(amps)), n_qubits_(n_qubits) {}
  void check_qubit(int qubit) const;

  std::vector<Complex> amps_;
  int n_qubits_ = 0;

  friend StateVector apply_hadamard(StateVector state, int qubit);
  friend StateVector apply_cnot(StateVector state, int control, int target);
  friend StateVector apply_axis_rotation(StateVector state, int qubit, Axis axis, double angle);
  friend StateVector apply_diagonal_phase(StateVector state, const DiagonalObservable& obs, double gamma);
};

StateVector apply_hadamard(StateVector state, int qubit);

/// |c,t> -> |c, t xor c>.
StateVector apply_cnot(StateVector state, int control, int target);

/// exp(-i angle P / 2) for P in {X, Y, Z}. X rotation by pi maps |0> to -i|1>.
StateVector apply_axis_rotation(StateVector state, int qubit, Axis axis, double angle);

/// amplitude[i] *= exp(-i gamma values[i]).
StateVector apply_diagonal_phase(StateVector state, const DiagonalObservable& obs, double gamma);

/// sum_i |amp_i|^2 values[i].
double expectation_diagonal(const StateVector& state, const DiagonalObservable& obs);

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Population of the basis states whose indices are listed.
double subspace_population(const StateVector& state, std::span<const std::uint64_t> indices);

}  // namespace nisq

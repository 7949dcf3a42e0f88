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

#include "nisq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "nisq/error.hpp"

namespace nisq {

namespace {

int qubits_for_length(std::size_t length) {
  if (length < 2 || !std::has_single_bit(length)) {
    throw SizeError("length " + std::to_string(length) + " is not 2^n with n >= 1");
  }
  const int n = std::countr_zero(length);
  if (n > kMaxQubits) {
    throw SizeError(std::to_string(n) + " qubits exceeds the limit of " + std::to_string(kMaxQubits));
  }
  return n;
}

void check_register_size(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw SizeError("n_qubits must be in 1.." + std::to_string(kMaxQubits) + ", got " + std::to_string(n_qubits));
  }
}

}  // namespace

DiagonalObservable::DiagonalObservable(std::vector<double> values) : values_(std::move(values)) {
  n_qubits_ = qubits_for_length(values_.size());
}

double DiagonalObservable::min() const { return *std::min_element(values_.begin(), values_.end()); }
double DiagonalObservable::max() const { return *std::max_element(values_.begin(), values_.end()); }

StateVector StateVector::uniform_superposition(int n_qubits) {
  check_register_size(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  return StateVector(std::vector<Complex>(dim, Complex(amp, 0.0)), n_qubits);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  check_register_size(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) {
    throw IndexError("basis index " + std::to_string(index) + " out of range for " + std::to_string(n_qubits) +
                     " qubits");
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps), n_qubits);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const int n = qubits_for_length(amplitudes.size());
  double sq = 0.0;
  for (const auto& a : amplitudes) sq += std::norm(a);
  if (!std::isfinite(sq) || sq <= 0.0) {
    throw DomainError("amplitudes have zero or non-finite norm");
  }
  const double inv = 1.0 / std::sqrt(sq);
  if (std::abs(inv - 1.0) > 1e-15) {
    for (auto& a : amplitudes) a *= inv;
  }
  return StateVector(std::move(amplitudes), n);
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
  return p;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n_qubits_) + " qubits");
  }
}

StateVector apply_hadamard(StateVector state, int qubit) {
  state.check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const double s = std::numbers::sqrt2 / 2.0;
  auto& a = state.amps_;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & stride) continue;
    const Complex lo = a[i];
    const Complex hi = a[i | stride];
    a[i] = s * (lo + hi);
    a[i | stride] = s * (lo - hi);
  }
  return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
  state.check_qubit(control);
  state.check_qubit(target);
  if (control == target) {
    throw IndexError("CNOT control and target must differ");
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  auto& a = state.amps_;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(a[i], a[i | tbit]);
  }
  return state;
}

StateVector apply_axis_rotation(StateVector state, int qubit, Axis axis, double angle) {
  state.check_qubit(qubit);
  if (!std::isfinite(angle)) {
    throw DomainError("rotation angle must be finite");
  }
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t stride = std::size_t{1} << qubit;
  auto& a = state.amps_;
  switch (axis) {
    case Axis::X: {
      const Complex mis(0.0, -s);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & stride) continue;
        const Complex lo = a[i];
        const Complex hi = a[i | stride];
        a[i] = c * lo + mis * hi;
        a[i | stride] = mis * lo + c * hi;
      }
      break;
    }
    case Axis::Y:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & stride) continue;
        const Complex lo = a[i];
        const Complex hi = a[i | stride];
        a[i] = c * lo - s * hi;
        a[i | stride] = s * lo + c * hi;
      }
      break;
    case Axis::Z: {
      const Complex down(c, -s);
      const Complex up(c, s);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & stride) ? up : down;
      break;
    }
  }
  return state;
}

StateVector apply_diagonal_phase(StateVector state, const DiagonalObservable& obs, double gamma) {
  if (obs.dim() != state.dim()) {
    throw SizeError("observable length " + std::to_string(obs.dim()) + " does not match state dimension " +
                    std::to_string(state.dim()));
  }
  if (!std::isfinite(gamma)) {
    throw DomainError("phase angle must be finite");
  }
  if (gamma == 0.0) return state;
  auto& a = state.amps_;
  const auto v = obs.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double phi = -gamma * v[i];
    a[i] *= Complex(std::cos(phi), std::sin(phi));
  }
  return state;
}

double expectation_diagonal(const StateVector& state, const DiagonalObservable& obs) {
  if (obs.dim() != state.dim()) {
    throw SizeError("observable length " + std::to_string(obs.dim()) + " does not match state dimension " +
                    std::to_string(state.dim()));
  }
  const auto a = state.amplitudes();
  const auto v = obs.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i]) * v[i];
  return sum;
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) {
    throw SizeError("inner product of states with different dimensions");
  }
  Complex sum = 0.0;
  const auto x = bra.amplitudes();
  const auto y = ket.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

double subspace_population(const StateVector& state, std::span<const std::uint64_t> indices) {
  double p = 0.0;
  for (auto i : indices) {
    if (i >= state.dim()) throw IndexError("basis index out of range");
    p += std::norm(state[i]);
  }
  return p;
}

}  // namespace nisq

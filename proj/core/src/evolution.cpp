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

#include "nisq/evolution.hpp"

#include <cmath>
#include <string>

#include "nisq/error.hpp"

namespace nisq {

void apply_mixer(MixerKind kind, std::span<const Complex> psi, std::span<Complex> out) {
  const std::size_t dim = psi.size();
  switch (kind) {
    case MixerKind::None:
      std::fill(out.begin(), out.end(), Complex{});
      return;
    case MixerKind::TransverseField: {
      for (std::size_t i = 0; i < dim; ++i) {
        Complex acc = 0.0;
        for (std::size_t bit = 1; bit < dim; bit <<= 1) acc += psi[i ^ bit];
        out[i] = -acc;
      }
      return;
    }
    case MixerKind::PlusProjector: {
      // |+><+|psi> = (sum_j psi_j / dim) on every component.
      Complex sum = 0.0;
      for (const auto& a : psi) sum += a;
      const Complex v = sum / static_cast<double>(dim);
      std::fill(out.begin(), out.end(), v);
      return;
    }
  }
}

StateVector apply_mixer_exponential(StateVector state, MixerKind kind, double theta) {
  if (!std::isfinite(theta)) throw DomainError("mixer angle must be finite");
  switch (kind) {
    case MixerKind::None:
      return state;
    case MixerKind::TransverseField: {
      // exp(+i theta sigma_x) = RX(-2 theta) on every qubit.
      const int n = state.n_qubits();
      for (int q = 0; q < n; ++q) state = apply_axis_rotation(std::move(state), q, Axis::X, -2.0 * theta);
      return state;
    }
    case MixerKind::PlusProjector: {
      // exp(-i theta P) = 1 + (e^{-i theta} - 1) P.
      auto amps = std::move(state).take_amplitudes();
      Complex sum = 0.0;
      for (const auto& a : amps) sum += a;
      const Complex shift = (std::exp(Complex(0.0, -theta)) - 1.0) * sum / static_cast<double>(amps.size());
      for (auto& a : amps) a += shift;
      return StateVector::from_amplitudes(std::move(amps));
    }
  }
  return state;
}

double mixer_expectation(const StateVector& state, MixerKind kind) {
  std::vector<Complex> out(state.dim());
  apply_mixer(kind, state.amplitudes(), out);
  Complex acc = 0.0;
  const auto psi = state.amplitudes();
  for (std::size_t i = 0; i < out.size(); ++i) acc += std::conj(psi[i]) * out[i];
  return acc.real();
}

namespace {

class HamiltonianApplier {
 public:
  HamiltonianApplier(const DrivenHamiltonian& h, std::size_t dim) : h_(h), mixed_(dim) {}

  /// out = -i H(t) psi given the weights at t.
  void derivative(const HamiltonianWeights& w, std::span<const Complex> psi, std::span<Complex> out) {
    const auto diag = h_.problem.values();
    if (w.mixer != 0.0 && h_.mixer != MixerKind::None) {
      apply_mixer(h_.mixer, psi, mixed_);
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const Complex hpsi = w.problem * diag[i] * psi[i] + w.mixer * mixed_[i];
        out[i] = Complex(hpsi.imag(), -hpsi.real());
      }
    } else {
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const Complex hpsi = w.problem * diag[i] * psi[i];
        out[i] = Complex(hpsi.imag(), -hpsi.real());
      }
    }
  }

 private:
  const DrivenHamiltonian& h_;
  std::vector<Complex> mixed_;
};

HamiltonianWeights sample_weights(const DrivenHamiltonian& h, double t) {
  const HamiltonianWeights w = h.weights ? h.weights(t) : HamiltonianWeights{};
  if (!std::isfinite(w.problem) || !std::isfinite(w.mixer)) {
    throw IntegrationError("non-finite Hamiltonian weights", t);
  }
  return w;
}

}  // namespace

StateVector evolve_time_dependent(StateVector state, const DrivenHamiltonian& hamiltonian, double t0, double t1,
                                  double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive and finite");
  if (!(t1 > t0)) throw DomainError("evolution requires t1 > t0");
  if (hamiltonian.problem.dim() != state.dim()) {
    throw SizeError("Hamiltonian dimension " + std::to_string(hamiltonian.problem.dim()) +
                    " does not match state dimension " + std::to_string(state.dim()));
  }
  for (double v : hamiltonian.problem.values()) {
    if (!std::isfinite(v)) throw IntegrationError("non-finite problem Hamiltonian entry", t0);
  }

  const double span = t1 - t0;
  const auto n_steps = static_cast<long long>(std::ceil(span / dt - 1e-9));
  const double h = span / static_cast<double>(n_steps);
  const std::size_t dim = state.dim();

  auto psi = std::move(state).take_amplitudes();
  std::vector<Complex> k(dim), stage(dim), acc(dim);
  HamiltonianApplier apply(hamiltonian, dim);

  HamiltonianWeights w_start = sample_weights(hamiltonian, t0);
  for (long long step = 0; step < n_steps; ++step) {
    const double t = t0 + static_cast<double>(step) * h;
    const double t_end = (step + 1 == n_steps) ? t1 : t + h;
    const HamiltonianWeights w_mid = sample_weights(hamiltonian, t + 0.5 * h);
    const HamiltonianWeights w_end = sample_weights(hamiltonian, t_end);

    apply.derivative(w_start, psi, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] = k[i];
      stage[i] = psi[i] + 0.5 * h * k[i];
    }
    apply.derivative(w_mid, stage, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] += 2.0 * k[i];
      stage[i] = psi[i] + 0.5 * h * k[i];
    }
    apply.derivative(w_mid, stage, k);
    for (std::size_t i = 0; i < dim; ++i) {
      acc[i] += 2.0 * k[i];
      stage[i] = psi[i] + h * k[i];
    }
    apply.derivative(w_end, stage, k);
    double sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += (h / 6.0) * (acc[i] + k[i]);
      sq += std::norm(psi[i]);
    }
    if (!std::isfinite(sq)) throw IntegrationError("state diverged", t_end);
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& a : psi) a *= inv;
    w_start = w_end;
  }
  return StateVector::from_amplitudes(std::move(psi));
}

StateVector product_formula_evolve(StateVector state, const DiagonalObservable& problem, MixerKind mixer,
                                   double problem_weight, double mixer_weight, double total_time, int steps,
                                   ProductOrder order) {
  if (steps < 1) throw DomainError("product formula needs at least one step");
  const double dt = total_time / steps;
  for (int s = 0; s < steps; ++s) {
    if (order == ProductOrder::First) {
      state = apply_diagonal_phase(std::move(state), problem, problem_weight * dt);
      state = apply_mixer_exponential(std::move(state), mixer, mixer_weight * dt);
    } else {
      state = apply_diagonal_phase(std::move(state), problem, 0.5 * problem_weight * dt);
      state = apply_mixer_exponential(std::move(state), mixer, mixer_weight * dt);
      state = apply_diagonal_phase(std::move(state), problem, 0.5 * problem_weight * dt);
    }
  }
  return state;
}

}  // namespace nisq

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dense_oracle.hpp"
#include "nisq/error.hpp"
#include "nisq/evolution.hpp"
#include "nisq/random.hpp"
#include "nisq/spectrum.hpp"
#include "nisq/statevector.hpp"

using namespace nisq;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> amps(std::size_t{1} << n);
  for (auto& a : amps) a = Complex(rng.normal(), rng.normal());
  return StateVector::from_amplitudes(std::move(amps));
}

std::vector<double> random_values(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

}  // namespace

TEST(StateVector, BasisAndUniform) {
  const auto b = StateVector::basis_state(3, 5);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(b[i], Complex(i == 5 ? 1.0 : 0.0, 0.0));
  const auto u = StateVector::uniform_superposition(4);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(u[i].real(), 0.25, 1e-15);
}

TEST(StateVector, RejectsBadSizes) {
  EXPECT_THROW(StateVector::uniform_superposition(0), SizeError);
  EXPECT_THROW(StateVector::uniform_superposition(kMaxQubits + 1), SizeError);
  EXPECT_THROW(StateVector::basis_state(2, 4), IndexError);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), SizeError);
  EXPECT_THROW(StateVector::from_amplitudes({0.0, 0.0}), DomainError);
  EXPECT_THROW(DiagonalObservable({1.0}), SizeError);
}

TEST(StateVector, BellState) {
  auto s = StateVector::basis_state(2, 0);
  s = apply_hadamard(std::move(s), 0);
  s = apply_cnot(std::move(s), 0, 1);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s[0] - Complex(r, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[2]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[3] - Complex(r, 0)), 0.0, 1e-12);
}

TEST(StateVector, XRotationByPiSendsZeroToMinusIOne) {
  const auto s = apply_axis_rotation(StateVector::basis_state(1, 0), 0, Axis::X, std::numbers::pi);
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(0, -1)), 0.0, 1e-15);
}

TEST(StateVector, GatesMatchKroneckerOracle) {
  const int n = 4;
  for (int q = 0; q < n; ++q) {
    const auto psi = random_state(n, 10 + q);
    const oracle::Vec v = oracle::to_eigen(psi);
    EXPECT_LT(oracle::max_abs_diff(apply_hadamard(psi, q), oracle::on_qubit(oracle::hadamard(), q, n) * v), 1e-12);
    const double angle = 0.37 + q;
    EXPECT_LT(oracle::max_abs_diff(apply_axis_rotation(psi, q, Axis::X, angle),
                                   oracle::on_qubit(oracle::rotation(oracle::pauli_x(), angle), q, n) * v),
              1e-12);
    EXPECT_LT(oracle::max_abs_diff(apply_axis_rotation(psi, q, Axis::Y, angle),
                                   oracle::on_qubit(oracle::rotation(oracle::pauli_y(), angle), q, n) * v),
              1e-12);
    EXPECT_LT(oracle::max_abs_diff(apply_axis_rotation(psi, q, Axis::Z, angle),
                                   oracle::on_qubit(oracle::rotation(oracle::pauli_z(), angle), q, n) * v),
              1e-12);
    for (int t = 0; t < n; ++t) {
      if (t == q) continue;
      EXPECT_LT(oracle::max_abs_diff(apply_cnot(psi, q, t), oracle::cnot(q, t, n) * v), 1e-12);
    }
  }
  EXPECT_THROW(apply_cnot(StateVector::basis_state(2, 0), 1, 1), IndexError);
  EXPECT_THROW(apply_hadamard(StateVector::basis_state(2, 0), 2), IndexError);
}

TEST(StateVector, DiagonalPhaseAndExpectation) {
  const int n = 3;
  const auto values = random_values(n, 3);
  const DiagonalObservable obs(values);
  const auto psi = random_state(n, 4);
  const oracle::Vec v = oracle::to_eigen(psi);
  EXPECT_LT(oracle::max_abs_diff(apply_diagonal_phase(psi, obs, 0.8),
                                 oracle::expm_hermitian(oracle::diagonal(values), 0.8) * v),
            1e-12);
  const double want = (v.adjoint() * oracle::diagonal(values) * v)(0, 0).real();
  EXPECT_NEAR(expectation_diagonal(psi, obs), want, 1e-12);
}

TEST(StateVector, NormPreservedOverRandomCircuits) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    auto s = random_state(n, 1000 + trial);
    for (int g = 0; g < 50; ++g) {
      const int q = static_cast<int>(rng.below(n));
      switch (rng.below(3)) {
        case 0:
          s = apply_hadamard(std::move(s), q);
          break;
        case 1:
          s = apply_axis_rotation(std::move(s), q, static_cast<Axis>(rng.below(3)), rng.uniform(-7, 7));
          break;
        default:
          if (n > 1) s = apply_cnot(std::move(s), q, static_cast<int>((q + 1 + rng.below(n - 1)) % n));
      }
    }
    EXPECT_NEAR(s.norm(), 1.0, 1e-10);
  }
}

TEST(StateVector, FidelityAndSubspace) {
  const auto a = random_state(3, 1);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(StateVector::basis_state(2, 0), StateVector::basis_state(2, 3)), 0.0, 1e-15);
  const std::vector<std::uint64_t> all{0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_NEAR(subspace_population(a, all), 1.0, 1e-12);
}

TEST(Spectrum, PauliSumMatchesDense) {
  const int n = 3;
  std::vector<PauliTerm> terms{{0.7, {{0, Axis::X}, {2, Axis::Z}}}, {-1.1, {{1, Axis::Y}}}, {0.3, {}}};
  const oracle::Mat h = 0.7 * oracle::on_qubit(oracle::pauli_x(), 0, n) * oracle::on_qubit(oracle::pauli_z(), 2, n) -
                        1.1 * oracle::on_qubit(oracle::pauli_y(), 1, n) + 0.3 * oracle::Mat::Identity(8, 8);
  const auto psi = random_state(n, 8);
  const auto out = apply_pauli_sum(terms, psi.amplitudes(), n);
  const oracle::Vec want = h * oracle::to_eigen(psi);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_LT(std::abs(out[i] - want(i)), 1e-12);

  const auto dense = dense_matrix(terms, n);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) EXPECT_LT(std::abs(dense[r * 8 + c] - h(r, c)), 1e-12);

  const auto report = exact_spectrum(terms, n);
  const auto ref = oracle::eigenvalues(h);
  ASSERT_EQ(report.eigenvalues.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(report.eigenvalues[i], ref[i], 1e-10);
  EXPECT_NEAR(report.min_gap, ref[1] - ref[0], 1e-10);
  EXPECT_NEAR(report.bandwidth, ref.back() - ref.front(), 1e-10);
}

TEST(Spectrum, ValidatesTerms) {
  EXPECT_THROW(validate_pauli_term({1.0, {{1, Axis::X}, {0, Axis::Z}}}, 2), IndexError);
  EXPECT_THROW(validate_pauli_term({1.0, {{2, Axis::X}}}, 2), IndexError);
}

TEST(Spectrum, GroundDegeneracy) {
  const std::vector<double> ev{-1.0, -1.0 + 1e-12, 0.5};
  EXPECT_EQ(count_ground_degeneracy(ev), 2);
}

TEST(Evolution, MixerExponentialMatchesDense) {
  const int n = 3;
  const auto psi = random_state(n, 21);
  const oracle::Vec v = oracle::to_eigen(psi);
  EXPECT_LT(oracle::max_abs_diff(apply_mixer_exponential(psi, MixerKind::TransverseField, 0.45),
                                 oracle::expm_hermitian(oracle::transverse_field(n), 0.45) * v),
            1e-12);
  const oracle::Vec plus = oracle::plus_state(n);
  const oracle::Mat proj = plus * plus.adjoint();
  EXPECT_LT(oracle::max_abs_diff(apply_mixer_exponential(psi, MixerKind::PlusProjector, 1.3),
                                 oracle::expm_hermitian(proj, 1.3) * v),
            1e-12);
  EXPECT_NEAR(mixer_expectation(StateVector::uniform_superposition(n), MixerKind::TransverseField), -3.0, 1e-12);
  EXPECT_NEAR(mixer_expectation(StateVector::uniform_superposition(n), MixerKind::PlusProjector), 1.0, 1e-12);
}

TEST(Evolution, TimeIndependentRk4MatchesExpm) {
  const int n = 3;
  const auto values = random_values(n, 5);
  DrivenHamiltonian h{DiagonalObservable(values), MixerKind::TransverseField,
                      [](double) { return HamiltonianWeights{0.6, 0.9}; }};
  const auto psi = random_state(n, 6);
  const auto out = evolve_time_dependent(psi, h, 0.0, 2.0, 1e-3);
  const oracle::Mat dense = 0.6 * oracle::diagonal(values) + 0.9 * oracle::transverse_field(n);
  EXPECT_LT(oracle::max_abs_diff(out, oracle::expm_hermitian(dense, 2.0) * oracle::to_eigen(psi)), 1e-9);
  EXPECT_THROW(evolve_time_dependent(psi, h, 0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(evolve_time_dependent(psi, h, 1.0, 1.0, 0.1), DomainError);
}

TEST(Evolution, ProductFormulaOrders) {
  const int n = 3;
  const auto values = random_values(n, 7);
  const auto psi = random_state(n, 8);
  const oracle::Mat dense = 0.8 * oracle::diagonal(values) + 0.5 * oracle::transverse_field(n);
  const oracle::Vec exact = oracle::expm_hermitian(dense, 1.5) * oracle::to_eigen(psi);
  auto err = [&](int steps, ProductOrder order) {
    return oracle::max_abs_diff(product_formula_evolve(psi, DiagonalObservable(values), MixerKind::TransverseField, 0.8,
                                                       0.5, 1.5, steps, order),
                                exact);
  };
  // Doubling the step count shrinks the error about 2x (first order) and 4x (second order).
  const double r1 = err(200, ProductOrder::First) / err(400, ProductOrder::First);
  const double r2 = err(200, ProductOrder::Second) / err(400, ProductOrder::Second);
  EXPECT_NEAR(r1, 2.0, 0.2);
  EXPECT_NEAR(r2, 4.0, 0.4);
  EXPECT_LT(err(400, ProductOrder::Second), err(400, ProductOrder::First));
}

TEST(Random, DeterministicAndUniform) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));

  Rng rng(11);
  std::vector<int> counts(10, 0);
  const int draws = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++counts[static_cast<int>(u * 10)];
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 10.0) * (c - draws / 10.0) / (draws / 10.0);
  EXPECT_LT(chi2, 27.88);  // 99.9% quantile, 9 dof
  EXPECT_NEAR(sum / draws, 0.0, 0.02);
  EXPECT_NEAR(sumsq / draws, 1.0, 0.02);
}

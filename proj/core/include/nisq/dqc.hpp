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
#include <utility>
#include <vector>

namespace nisq {

enum class FeatureMapKind { FourierDefault, ChebyshevDefault, ChebyshevTower };

/// Qubit j (0-based) is rotated by RY(2 w_j phi(x)), i.e. exp(-i w_j phi(x) Y_j),
/// so the generator is G = sum_j w_j Y_j. Default weights are 1/2; the tower
/// uses (j + 1) / 2. phi(x) = x (Fourier) or arccos(x) (Chebyshev, x in [-1, 1]).
struct FeatureMap {
  int n_qubits = 0;
  FeatureMapKind kind = FeatureMapKind::FourierDefault;
  std::vector<double> weights;

  static FeatureMap make(FeatureMapKind kind, int n_qubits);
  /// Throws SizeError for n outside 1..12 or a weight-count mismatch,
  /// DomainError for a non-positive weight.
  void validate() const;

  bool is_chebyshev() const noexcept { return kind != FeatureMapKind::FourierDefault; }
  /// Throws DomainError outside the encoding domain.
  double phi(double x) const;
  /// Derivatives of phi; Chebyshev throws DomainError at |x| >= 1.
  double dphi(double x) const;
  double d2phi(double x) const;
};

/// Hardware-efficient layers: RY(theta) then RZ(theta) on each qubit, then a
/// CNOT chain (0,1), (1,2), ... Angle index (layer * n + qubit) * 2 + r with
/// r = 0 for RY and 1 for RZ.
struct VariationalAnsatz {
  int n_qubits = 0;
  int n_layers = 0;
  std::vector<double> theta;

  static VariationalAnsatz zeros(int n_qubits, int n_layers);
  /// Angles uniform in [-scale, scale].
  static VariationalAnsatz random(int n_qubits, int n_layers, std::uint64_t seed, double scale);
  std::size_t n_params() const noexcept { return static_cast<std::size_t>(n_layers) * n_qubits * 2; }
  void validate() const;
};

/// f(x) = <0| U_phi(x)^dag U_theta^dag M U_theta U_phi(x) |0> with
/// M = sum_j m_j Z_j (default m_j = 1, total magnetization).
struct QuantumModel {
  FeatureMap feature_map;
  VariationalAnsatz ansatz;
  std::vector<double> observable_weights;

  static QuantumModel make(FeatureMap fm, VariationalAnsatz ansatz);
  void validate() const;
};

double evaluate_model(const QuantumModel& model, double x);

/// Unique non-zero gaps between eigenvalues of G = sum_j w_j Z_j (same
/// spectrum as sum_j w_j Y_j), merged at tolerance 1e-9.
int generator_spectrum_expressivity(const FeatureMap& fm);

/// df/dx by shifting each encoding rotation by +-pi/2 and applying the chain
/// rule through alpha_j = 2 w_j phi(x).
double data_derivative(const QuantumModel& model, double x);

/// df/dtheta_k by the two-term shift rule.
double theta_derivative(const QuantumModel& model, double x, std::size_t k);

/// d2f/dx2 from nested shifts of the encoding rotations.
double second_derivative(const QuantumModel& model, double x);

/// Residual R(x, f, f') of a first-order ODE, zero on solutions.
using OdeResidual = std::function<double(double x, double f, double df)>;

struct OdeProblem {
  OdeResidual residual;
  std::vector<std::pair<double, double>> boundary;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<double> collocation;
  double boundary_weight = 10.0;

  /// Throws DomainError for a missing residual or boundary pin, an empty or
  /// out-of-domain collocation set, or a negative weight.
  void validate() const;
};

/// df/dx = -f with f(0) = 1 on [0, 0.9], collocation on a uniform grid.
OdeProblem decay_problem(int n_points = 20);

/// mean_i R(x_i, f, f')^2 + boundary_weight * sum_b (f(x_b) - y_b)^2.
double ode_loss(const QuantumModel& model, const OdeProblem& problem);

/// Loss and its gradient in theta, using parameter-shift derivatives for f
/// and f'. The residual's partials in f and f' are taken by central
/// differences, which is exact for residuals linear in (f, f').
double ode_loss_gradient(const QuantumModel& model, const OdeProblem& problem, std::vector<double>& gradient);

struct TrainOptions {
  int max_iters = 600;
  double learning_rate = 0.02;
  double momentum = 0.9;
  /// Loss above divergence_factor * initial loss aborts training.
  double divergence_factor = 1e3;
};

struct TrainResult {
  QuantumModel model;
  std::vector<double> loss_trace;
  double best_loss = 0.0;
  int best_iteration = 0;
};

using TrainCallback = std::function<void(int iteration, double loss, const QuantumModel& current)>;

/// Gradient descent with momentum. loss_trace[t] is the loss of the
/// parameters at iteration t; the returned model holds the best-loss
/// parameters seen. Throws DivergenceError carrying the trace on blow-up.
TrainResult train(QuantumModel model, const OdeProblem& problem, const TrainOptions& options,
                  const TrainCallback& on_iteration = {});

/// max_i |f(x_i) - reference(x_i)| on n_points uniform points of [lower, upper].
double max_grid_error(const QuantumModel& model, const std::function<double(double)>& reference, double lower,
                      double upper, int n_points = 50);

}  // namespace nisq

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

#include "nisq/dqc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>

#include "nisq/error.hpp"
#include "nisq/random.hpp"

namespace nisq {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kMaxModelQubits = 12;

using Cplx = std::complex<double>;

/// Evaluates the circuit for explicit encoding angles alpha_j. The encoded
/// state is a product state, built directly; the ansatz acts in place.
class Circuit {
 public:
  explicit Circuit(const QuantumModel& model)
      : model_(model), n_(model.feature_map.n_qubits), amps_(std::size_t{1} << n_), z_diag_(amps_.size(), 0.0) {
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      for (int j = 0; j < n_; ++j)
        z_diag_[i] += ((i >> j) & 1U) ? -model.observable_weights[j] : model.observable_weights[j];
    }
  }

  double operator()(std::span<const double> alpha, std::span<const double> theta) {
    prepare(alpha);
    const int layers = model_.ansatz.n_layers;
    for (int l = 0; l < layers; ++l) {
      for (int q = 0; q < n_; ++q) {
        const std::size_t k = (static_cast<std::size_t>(l) * n_ + q) * 2;
        ry(q, theta[k]);
        rz(q, theta[k + 1]);
      }
      for (int q = 0; q + 1 < n_; ++q) cnot(q, q + 1);
    }
    double e = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) e += std::norm(amps_[i]) * z_diag_[i];
    return e;
  }

 private:
  void prepare(std::span<const double> alpha) {
    amps_[0] = 1.0;
    std::size_t filled = 1;
    for (int j = 0; j < n_; ++j) {
      const double c = std::cos(alpha[j] / 2.0);
      const double s = std::sin(alpha[j] / 2.0);
      for (std::size_t i = 0; i < filled; ++i) {
        amps_[i + filled] = amps_[i] * s;
        amps_[i] *= c;
      }
      filled *= 2;
    }
  }

  void ry(int q, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const Cplx a0 = amps_[i];
      const Cplx a1 = amps_[i | bit];
      amps_[i] = c * a0 - s * a1;
      amps_[i | bit] = s * a0 + c * a1;
    }
  }

  void rz(int q, double angle) {
    const Cplx lo = std::polar(1.0, -angle / 2.0);
    const Cplx hi = std::conj(lo);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & bit) ? hi : lo;
  }

  void cnot(int control, int target) {
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
    }
  }

  const QuantumModel& model_;
  int n_;
  std::vector<Cplx> amps_;
  std::vector<double> z_diag_;
};

std::vector<double> encoding_angles(const FeatureMap& fm, double x) {
  const double p = fm.phi(x);
  std::vector<double> alpha(fm.n_qubits);
  for (int j = 0; j < fm.n_qubits; ++j) alpha[j] = 2.0 * fm.weights[j] * p;
  return alpha;
}

/// d alpha_j / dx.
std::vector<double> encoding_slopes(const FeatureMap& fm, double x) {
  const double d = fm.dphi(x);
  std::vector<double> slope(fm.n_qubits);
  for (int j = 0; j < fm.n_qubits; ++j) slope[j] = 2.0 * fm.weights[j] * d;
  return slope;
}

/// Shift-rule df/dalpha_j for every j.
std::vector<double> alpha_gradient(Circuit& circuit, std::vector<double> alpha, std::span<const double> theta) {
  std::vector<double> grad(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double a = alpha[j];
    alpha[j] = a + kHalfPi;
    const double plus = circuit(alpha, theta);
    alpha[j] = a - kHalfPi;
    const double minus = circuit(alpha, theta);
    alpha[j] = a;
    grad[j] = 0.5 * (plus - minus);
  }
  return grad;
}

/// df/dx = sum_j alpha_j'(x) df/dalpha_j.
double chain_first(Circuit& circuit, const std::vector<double>& alpha, std::span<const double> slope,
                   std::span<const double> theta) {
  const auto grad = alpha_gradient(circuit, alpha, theta);
  double d = 0.0;
  for (std::size_t j = 0; j < grad.size(); ++j) d += slope[j] * grad[j];
  return d;
}

void check_theta_index(const QuantumModel& model, std::size_t k) {
  if (k >= model.ansatz.theta.size()) {
    throw IndexError("theta index " + std::to_string(k) + " out of range for " +
                     std::to_string(model.ansatz.theta.size()) + " parameters");
  }
}

}  // namespace

FeatureMap FeatureMap::make(FeatureMapKind kind, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxModelQubits) {
    throw SizeError("feature map supports 1..12 qubits, got " + std::to_string(n_qubits));
  }
  FeatureMap fm;
  fm.n_qubits = n_qubits;
  fm.kind = kind;
  fm.weights.resize(n_qubits);
  for (int j = 0; j < n_qubits; ++j) fm.weights[j] = kind == FeatureMapKind::ChebyshevTower ? (j + 1) / 2.0 : 0.5;
  return fm;
}

void FeatureMap::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxModelQubits) {
    throw SizeError("feature map supports 1..12 qubits, got " + std::to_string(n_qubits));
  }
  if (weights.size() != static_cast<std::size_t>(n_qubits)) throw SizeError("feature map needs one weight per qubit");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("feature map weights must be positive and finite");
  }
}

double FeatureMap::phi(double x) const {
  if (!std::isfinite(x)) throw DomainError("non-finite model input");
  if (!is_chebyshev()) return x;
  if (x < -1.0 || x > 1.0) throw DomainError("Chebyshev encoding needs x in [-1, 1], got " + std::to_string(x));
  return std::acos(x);
}

double FeatureMap::dphi(double x) const {
  if (!std::isfinite(x)) throw DomainError("non-finite model input");
  if (!is_chebyshev()) return 1.0;
  if (!(std::abs(x) < 1.0)) throw DomainError("arccos encoding is not differentiable at x = " + std::to_string(x));
  return -1.0 / std::sqrt(1.0 - x * x);
}

double FeatureMap::d2phi(double x) const {
  if (!std::isfinite(x)) throw DomainError("non-finite model input");
  if (!is_chebyshev()) return 0.0;
  if (!(std::abs(x) < 1.0)) throw DomainError("arccos encoding is not differentiable at x = " + std::to_string(x));
  const double u = 1.0 - x * x;
  return -x / (u * std::sqrt(u));
}

VariationalAnsatz VariationalAnsatz::zeros(int n_qubits, int n_layers) {
  VariationalAnsatz a{n_qubits, n_layers, {}};
  a.theta.assign(a.n_params(), 0.0);
  a.validate();
  return a;
}

VariationalAnsatz VariationalAnsatz::random(int n_qubits, int n_layers, std::uint64_t seed, double scale) {
  VariationalAnsatz a = zeros(n_qubits, n_layers);
  Rng rng(seed);
  for (double& t : a.theta) t = rng.uniform(-scale, scale);
  return a;
}

void VariationalAnsatz::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxModelQubits) {
    throw SizeError("ansatz supports 1..12 qubits, got " + std::to_string(n_qubits));
  }
  if (n_layers < 0) throw DomainError("negative layer count");
  if (theta.size() != n_params()) {
    throw SizeError("ansatz expects " + std::to_string(n_params()) + " angles, got " + std::to_string(theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) throw DomainError("non-finite ansatz angle");
  }
}

QuantumModel QuantumModel::make(FeatureMap fm, VariationalAnsatz ansatz) {
  QuantumModel m{std::move(fm), std::move(ansatz), {}};
  m.observable_weights.assign(m.feature_map.n_qubits, 1.0);
  m.validate();
  return m;
}

void QuantumModel::validate() const {
  feature_map.validate();
  ansatz.validate();
  if (ansatz.n_qubits != feature_map.n_qubits) throw SizeError("feature map and ansatz disagree on qubit count");
  if (observable_weights.size() != static_cast<std::size_t>(feature_map.n_qubits)) {
    throw SizeError("observable needs one weight per qubit");
  }
  for (double w : observable_weights) {
    if (!std::isfinite(w)) throw DomainError("non-finite observable weight");
  }
}

double evaluate_model(const QuantumModel& model, double x) {
  model.validate();
  Circuit circuit(model);
  return circuit(encoding_angles(model.feature_map, x), model.ansatz.theta);
}

int generator_spectrum_expressivity(const FeatureMap& fm) {
  fm.validate();
  const std::size_t dim = std::size_t{1} << fm.n_qubits;
  std::vector<double> eig(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (int j = 0; j < fm.n_qubits; ++j) eig[i] += ((i >> j) & 1U) ? -fm.weights[j] : fm.weights[j];
  }
  std::sort(eig.begin(), eig.end());
  eig.erase(std::unique(eig.begin(), eig.end(), [](double a, double b) { return std::abs(a - b) <= 1e-9; }), eig.end());
  std::vector<double> gaps;
  for (std::size_t a = 0; a < eig.size(); ++a) {
    for (std::size_t b = a + 1; b < eig.size(); ++b) gaps.push_back(eig[b] - eig[a]);
  }
  std::sort(gaps.begin(), gaps.end());
  int count = 0;
  double last = 0.0;
  for (double g : gaps) {
    if (g <= 1e-9) continue;
    if (count == 0 || g - last > 1e-9) {
      ++count;
      last = g;
    }
  }
  return count;
}

double data_derivative(const QuantumModel& model, double x) {
  model.validate();
  Circuit circuit(model);
  const auto slope = encoding_slopes(model.feature_map, x);
  return chain_first(circuit, encoding_angles(model.feature_map, x), slope, model.ansatz.theta);
}

double theta_derivative(const QuantumModel& model, double x, std::size_t k) {
  model.validate();
  check_theta_index(model, k);
  Circuit circuit(model);
  const auto alpha = encoding_angles(model.feature_map, x);
  std::vector<double> theta = model.ansatz.theta;
  theta[k] += kHalfPi;
  const double plus = circuit(alpha, theta);
  theta[k] -= 2.0 * kHalfPi;
  const double minus = circuit(alpha, theta);
  return 0.5 * (plus - minus);
}

double second_derivative(const QuantumModel& model, double x) {
  model.validate();
  const FeatureMap& fm = model.feature_map;
  Circuit circuit(model);
  const auto& theta = model.ansatz.theta;
  const auto slope = encoding_slopes(fm, x);
  const double d2 = fm.d2phi(x);
  auto alpha = encoding_angles(fm, x);
  const auto grad = alpha_gradient(circuit, alpha, theta);

  // d2f/dx2 = sum_jk a_j' a_k' H_jk + sum_j a_j'' g_j with H from nested shifts.
  double total = 0.0;
  const int n = fm.n_qubits;
  for (int j = 0; j < n; ++j) {
    total += 2.0 * fm.weights[j] * d2 * grad[j];
    for (int k = 0; k < n; ++k) {
      const double aj = alpha[j];
      const double ak = alpha[k];
      auto at = [&](double sj, double sk) {
        alpha[j] += sj;
        alpha[k] += sk;
        const double v = circuit(alpha, theta);
        alpha[j] = aj;
        alpha[k] = ak;
        return v;
      };
      const double h =
          0.25 * (at(kHalfPi, kHalfPi) - at(kHalfPi, -kHalfPi) - at(-kHalfPi, kHalfPi) + at(-kHalfPi, -kHalfPi));
      total += slope[j] * slope[k] * h;
    }
  }
  return total;
}

void OdeProblem::validate() const {
  if (!residual) throw DomainError("ODE problem has no residual");
  if (boundary.empty()) throw DomainError("ODE problem needs at least one boundary pin");
  if (collocation.empty()) throw DomainError("ODE problem needs collocation points");
  if (!(lower < upper)) throw DomainError("ODE domain must satisfy lower < upper");
  for (double x : collocation) {
    if (x < lower || x > upper) throw DomainError("collocation point " + std::to_string(x) + " outside the domain");
  }
  if (!(boundary_weight >= 0.0)) throw DomainError("boundary weight must be non-negative");
}

OdeProblem decay_problem(int n_points) {
  if (n_points < 2) throw DomainError("need at least two collocation points");
  OdeProblem p;
  p.residual = [](double, double f, double df) { return df + f; };
  p.boundary = {{0.0, 1.0}};
  p.lower = 0.0;
  p.upper = 0.9;
  for (int i = 0; i < n_points; ++i) p.collocation.push_back(p.upper * i / (n_points - 1));
  return p;
}

double ode_loss(const QuantumModel& model, const OdeProblem& problem) {
  model.validate();
  problem.validate();
  Circuit circuit(model);
  const auto& theta = model.ansatz.theta;
  double sum = 0.0;
  for (double x : problem.collocation) {
    const auto alpha = encoding_angles(model.feature_map, x);
    const double f = circuit(alpha, theta);
    const double df = chain_first(circuit, alpha, encoding_slopes(model.feature_map, x), theta);
    const double r = problem.residual(x, f, df);
    sum += r * r;
  }
  double loss = sum / static_cast<double>(problem.collocation.size());
  for (const auto& [xb, yb] : problem.boundary) {
    const double d = circuit(encoding_angles(model.feature_map, xb), theta) - yb;
    loss += problem.boundary_weight * d * d;
  }
  return loss;
}

double ode_loss_gradient(const QuantumModel& model, const OdeProblem& problem, std::vector<double>& gradient) {
  model.validate();
  problem.validate();
  const FeatureMap& fm = model.feature_map;
  const std::size_t n_theta = model.ansatz.theta.size();
  Circuit circuit(model);
  std::vector<double> theta = model.ansatz.theta;
  gradient.assign(n_theta, 0.0);
  const double inv_m = 1.0 / static_cast<double>(problem.collocation.size());

  double loss = 0.0;
  std::vector<double> df_dtheta(n_theta), ddf_dtheta(n_theta);
  for (double x : problem.collocation) {
    auto alpha = encoding_angles(fm, x);
    const auto slope = encoding_slopes(fm, x);
    const double f = circuit(alpha, theta);
    const double df = chain_first(circuit, alpha, slope, theta);

    for (std::size_t k = 0; k < n_theta; ++k) {
      const double t = theta[k];
      theta[k] = t + kHalfPi;
      const double f_plus = circuit(alpha, theta);
      const double df_plus = chain_first(circuit, alpha, slope, theta);
      theta[k] = t - kHalfPi;
      const double f_minus = circuit(alpha, theta);
      const double df_minus = chain_first(circuit, alpha, slope, theta);
      theta[k] = t;
      df_dtheta[k] = 0.5 * (f_plus - f_minus);
      ddf_dtheta[k] = 0.5 * (df_plus - df_minus);
    }

    const double r = problem.residual(x, f, df);
    const double hf = 1e-6 * std::max(1.0, std::abs(f));
    const double hd = 1e-6 * std::max(1.0, std::abs(df));
    const double r_f = (problem.residual(x, f + hf, df) - problem.residual(x, f - hf, df)) / (2.0 * hf);
    const double r_df = (problem.residual(x, f, df + hd) - problem.residual(x, f, df - hd)) / (2.0 * hd);
    loss += inv_m * r * r;
    for (std::size_t k = 0; k < n_theta; ++k) {
      gradient[k] += inv_m * 2.0 * r * (r_f * df_dtheta[k] + r_df * ddf_dtheta[k]);
    }
  }

  for (const auto& [xb, yb] : problem.boundary) {
    const auto alpha = encoding_angles(fm, xb);
    const double d = circuit(alpha, theta) - yb;
    loss += problem.boundary_weight * d * d;
    for (std::size_t k = 0; k < n_theta; ++k) {
      const double t = theta[k];
      theta[k] = t + kHalfPi;
      const double plus = circuit(alpha, theta);
      theta[k] = t - kHalfPi;
      const double minus = circuit(alpha, theta);
      theta[k] = t;
      gradient[k] += problem.boundary_weight * 2.0 * d * 0.5 * (plus - minus);
    }
  }
  return loss;
}

TrainResult train(QuantumModel model, const OdeProblem& problem, const TrainOptions& options,
                  const TrainCallback& on_iteration) {
  if (options.max_iters < 1) throw DomainError("max_iters must be at least 1");
  if (!(options.learning_rate >= 0.0) || !std::isfinite(options.learning_rate)) {
    throw DomainError("learning rate must be non-negative and finite");
  }
  if (!(options.momentum >= 0.0 && options.momentum < 1.0)) throw DomainError("momentum must lie in [0, 1)");
  model.validate();
  problem.validate();

  TrainResult result;
  result.model = model;
  std::vector<double> gradient;
  std::vector<double> velocity(model.ansatz.theta.size(), 0.0);
  double initial = 0.0;
  for (int it = 0; it < options.max_iters; ++it) {
    const double loss = ode_loss_gradient(model, problem, gradient);
    result.loss_trace.push_back(loss);
    if (it == 0) initial = loss;
    if (!std::isfinite(loss) || loss > options.divergence_factor * std::max(initial, 1e-300)) {
      throw DivergenceError(
          "training diverged at iteration " + std::to_string(it) + " (loss " + std::to_string(loss) + ")",
          result.loss_trace);
    }
    if (it == 0 || loss < result.best_loss) {
      result.best_loss = loss;
      result.best_iteration = it;
      result.model = model;
    }
    if (on_iteration) on_iteration(it, loss, model);
    for (std::size_t k = 0; k < velocity.size(); ++k) {
      velocity[k] = options.momentum * velocity[k] - options.learning_rate * gradient[k];
      model.ansatz.theta[k] += velocity[k];
    }
  }
  return result;
}

double max_grid_error(const QuantumModel& model, const std::function<double(double)>& reference, double lower,
                      double upper, int n_points) {
  if (n_points < 2) throw DomainError("need at least two grid points");
  model.validate();
  Circuit circuit(model);
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double x = lower + (upper - lower) * i / (n_points - 1);
    const double f = circuit(encoding_angles(model.feature_map, x), model.ansatz.theta);
    worst = std::max(worst, std::abs(f - reference(x)));
  }
  return worst;
}

}  // namespace nisq

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

#include "nisq/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "nisq/error.hpp"
#include "nisq/random.hpp"

namespace nisq {

namespace {

void check_diagonal_size(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw SizeError("diagonal form supports 1.." + std::to_string(kMaxQubits) + " variables, got " + std::to_string(n));
  }
}

// alpha + beta * x_var
struct Affine {
  int var;
  double alpha;
  double beta;
};

// Adds coef * u * v to the QUBO.
void add_affine_product(QuboProblem& q, const Affine& u, const Affine& v, double coef) {
  q.add_offset(coef * u.alpha * v.alpha);
  q.add_linear(v.var, coef * u.alpha * v.beta);
  q.add_linear(u.var, coef * u.beta * v.alpha);
  q.add_product(u.var, v.var, coef * u.beta * v.beta);
}

void add_affine(QuboProblem& q, const Affine& u, double coef) {
  q.add_offset(coef * u.alpha);
  q.add_linear(u.var, coef * u.beta);
}

// Indicator that the literal is false.
Affine literal_false(int literal) {
  const int var = std::abs(literal) - 1;
  return literal > 0 ? Affine{var, 1.0, -1.0} : Affine{var, 0.0, 1.0};
}

}  // namespace

BitString BitString::from_index(std::uint64_t index, int n_vars) {
  BitString b;
  b.bits.resize(n_vars);
  for (int i = 0; i < n_vars; ++i) b.bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return b;
}

std::uint64_t BitString::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) idx |= static_cast<std::uint64_t>(bits[i] & 1U) << i;
  return idx;
}

// ---------------------------------------------------------------------------

QuboProblem::QuboProblem(int n_vars) : n_(n_vars) {
  if (n_vars < 0) throw SizeError("negative variable count");
  q_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  c_.assign(n_, 0.0);
}

QuboProblem::QuboProblem(int n_vars, std::vector<double> quad, std::vector<double> lin, double offset)
    : n_(n_vars), q_(std::move(quad)), c_(std::move(lin)), offset_(offset) {
  if (n_vars < 0) throw SizeError("negative variable count");
  if (q_.size() != static_cast<std::size_t>(n_) * n_ || c_.size() != static_cast<std::size_t>(n_)) {
    throw SizeError("QUBO coefficient storage does not match n_vars");
  }
  for (int i = 0; i < n_; ++i) {
    if (q(i, i) != 0.0) throw EncodingError("QUBO quadratic matrix must have a zero diagonal");
    for (int j = i + 1; j < n_; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > 1e-12) throw EncodingError("QUBO quadratic matrix must be symmetric");
    }
  }
}

void QuboProblem::check_var(int i) const {
  if (i < 0 || i >= n_) throw IndexError("QUBO variable " + std::to_string(i) + " out of range");
}

void QuboProblem::add_product(int i, int j, double coef) {
  check_var(i);
  check_var(j);
  if (i == j) {
    c_[i] += coef;
    return;
  }
  q_[static_cast<std::size_t>(i) * n_ + j] += 0.5 * coef;
  q_[static_cast<std::size_t>(j) * n_ + i] += 0.5 * coef;
}

void QuboProblem::add_linear(int i, double coef) {
  check_var(i);
  c_[i] += coef;
}

double QuboProblem::energy(const BitString& x) const {
  if (x.size() != n_) throw SizeError("assignment length does not match QUBO size");
  double e = offset_;
  for (int i = 0; i < n_; ++i) {
    if (!x.bits[i]) continue;
    e += c_[i];
    const double* row = &q_[static_cast<std::size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) {
      if (j != i && x.bits[j]) e += row[j];
    }
  }
  return e;
}

double QuboProblem::energy(std::uint64_t index) const {
  if (n_ > 63) throw SizeError("index-based evaluation needs n_vars <= 63");
  return energy(BitString::from_index(index, n_));
}

// ---------------------------------------------------------------------------

IsingHamiltonian::IsingHamiltonian(int n_spins) : n_(n_spins) {
  if (n_spins < 0) throw SizeError("negative spin count");
  a_.assign(n_, 0.0);
  j_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

IsingHamiltonian::IsingHamiltonian(int n_spins, std::vector<double> fields, std::vector<double> couplings,
                                   double offset)
    : n_(n_spins), a_(std::move(fields)), j_(std::move(couplings)), offset_(offset) {
  if (a_.size() != static_cast<std::size_t>(n_) || j_.size() != static_cast<std::size_t>(n_) * n_) {
    throw SizeError("Ising coefficient storage does not match n_spins");
  }
  for (int i = 0; i < n_; ++i) {
    if (coupling(i, i) != 0.0) throw EncodingError("Ising couplings must have a zero diagonal");
    for (int k = i + 1; k < n_; ++k) {
      if (std::abs(coupling(i, k) - coupling(k, i)) > 1e-12) throw EncodingError("Ising couplings must be symmetric");
    }
  }
}

void IsingHamiltonian::set_field(int i, double value) {
  if (i < 0 || i >= n_) throw IndexError("spin index out of range");
  a_[i] = value;
}

void IsingHamiltonian::set_coupling(int i, int k, double value) {
  if (i < 0 || i >= n_ || k < 0 || k >= n_) throw IndexError("spin index out of range");
  if (i == k) throw EncodingError("Ising self-coupling is not allowed");
  j_[static_cast<std::size_t>(i) * n_ + k] = value;
  j_[static_cast<std::size_t>(k) * n_ + i] = value;
}

double IsingHamiltonian::energy(std::uint64_t index) const {
  double field_sum = 0.0;
  double pair_sum = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double si = ((index >> i) & 1U) ? 1.0 : -1.0;
    field_sum += a_[i] * si;
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      const double sk = ((index >> k) & 1U) ? 1.0 : -1.0;
      pair_sum += coupling(i, k) * si * sk;
    }
  }
  return -(field_sum + pair_sum) + offset_;
}

IsingHamiltonian qubo_to_ising(const QuboProblem& q) {
  const int n = q.n_vars();
  IsingHamiltonian h(n);
  double offset = q.offset();
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row_sum += q.q(i, j);
      offset += 0.25 * q.q(i, j);
      if (j > i) h.set_coupling(i, j, -0.25 * q.q(i, j));
    }
    h.set_field(i, -0.5 * (row_sum + q.c(i)));
    offset += 0.5 * q.c(i);
  }
  h.add_offset(offset);
  return h;
}

QuboProblem ising_to_qubo(const IsingHamiltonian& h) {
  const int n = h.n_spins();
  QuboProblem q(n);
  double offset = h.offset();
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      row_sum += h.coupling(i, k);
      offset -= h.coupling(i, k);
      if (k > i) q.add_product(i, k, -8.0 * h.coupling(i, k));
    }
    q.add_linear(i, -2.0 * h.field(i) + 4.0 * row_sum);
    offset += h.field(i);
  }
  q.add_offset(offset);
  return q;
}

DiagonalObservable ising_to_diagonal(const IsingHamiltonian& h) {
  check_diagonal_size(h.n_spins());
  const std::size_t dim = std::size_t{1} << h.n_spins();
  std::vector<double> values(dim);
  for (std::size_t i = 0; i < dim; ++i) values[i] = h.energy(i);
  return DiagonalObservable(std::move(values));
}

DiagonalObservable qubo_to_diagonal(const QuboProblem& q) {
  check_diagonal_size(q.n_vars());
  const std::size_t dim = std::size_t{1} << q.n_vars();
  std::vector<double> values(dim);
  for (std::size_t i = 0; i < dim; ++i) values[i] = q.energy(static_cast<std::uint64_t>(i));
  return DiagonalObservable(std::move(values));
}

std::vector<PauliTerm> ising_pauli_terms(const IsingHamiltonian& h) {
  std::vector<PauliTerm> terms;
  terms.push_back({h.offset(), {}});
  for (int i = 0; i < h.n_spins(); ++i) {
    if (h.field(i) != 0.0) terms.push_back({h.field(i), {{i, Axis::Z}}});
    for (int k = i + 1; k < h.n_spins(); ++k) {
      if (h.coupling(i, k) != 0.0) terms.push_back({-2.0 * h.coupling(i, k), {{i, Axis::Z}, {k, Axis::Z}}});
    }
  }
  return terms;
}

// ---------------------------------------------------------------------------

QuboProblem maxcut_qubo(std::span<const Edge> edges, int n_nodes) {
  QuboProblem q(n_nodes);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes) {
      throw IndexError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a missing node");
    }
    if (u == v) throw EncodingError("self-loop on node " + std::to_string(u));
    // cut indicator x_u + x_v - 2 x_u x_v, negated
    q.add_linear(u, -1.0);
    q.add_linear(v, -1.0);
    q.add_product(u, v, 2.0);
  }
  return q;
}

int cut_size(std::span<const Edge> edges, const BitString& x) {
  int cut = 0;
  for (const auto& [u, v] : edges) cut += (x.bits.at(u) != x.bits.at(v)) ? 1 : 0;
  return cut;
}

// ---------------------------------------------------------------------------

CnfFormula::CnfFormula(int n_vars, std::vector<std::vector<int>> clauses) : n_(n_vars), clauses_(std::move(clauses)) {
  if (n_vars < 0) throw SizeError("negative variable count");
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    auto& clause = clauses_[c];
    if (clause.empty()) throw EncodingError("clause " + std::to_string(c) + " is empty");
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n_vars) {
        throw EncodingError("clause " + std::to_string(c) + " has literal " + std::to_string(lit) + " outside 1.." +
                            std::to_string(n_vars));
      }
    }
    std::sort(clause.begin(), clause.end(),
              [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t i = 1; i < clause.size(); ++i) {
      if (clause[i] == -clause[i - 1]) {
        throw EncodingError("clause " + std::to_string(c) + " contains variable " +
                            std::to_string(std::abs(clause[i])) + " and its negation");
      }
    }
  }
}

int CnfFormula::max_clause_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.size());
  return static_cast<int>(w);
}

int CnfFormula::count_satisfied(const BitString& x) const {
  if (x.size() < n_) throw SizeError("assignment shorter than the formula's variable count");
  int count = 0;
  for (const auto& clause : clauses_) {
    for (int lit : clause) {
      const bool value = x.bits[std::abs(lit) - 1] != 0;
      if (value == (lit > 0)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

CnfFormula random_ksat(int n_vars, int n_clauses, int k, std::uint64_t seed) {
  if (k < 1 || k > n_vars) {
    throw DomainError("clause width k=" + std::to_string(k) + " must be in 1..n_vars=" + std::to_string(n_vars));
  }
  if (n_clauses < 0) throw DomainError("negative clause count");
  Rng rng(seed);
  std::vector<int> pool(n_vars);
  std::vector<std::vector<int>> clauses;
  clauses.reserve(n_clauses);
  for (int c = 0; c < n_clauses; ++c) {
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> clause(k);
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_vars - i)));
      std::swap(pool[i], pool[j]);
    }
    std::sort(pool.begin(), pool.begin() + k);
    for (int i = 0; i < k; ++i) clause[i] = rng.coin() ? pool[i] : -pool[i];
    clauses.push_back(std::move(clause));
  }
  return CnfFormula(n_vars, std::move(clauses));
}

DiagonalObservable maxsat_diagonal(const CnfFormula& f) {
  check_diagonal_size(f.n_vars());
  const std::size_t dim = std::size_t{1} << f.n_vars();
  std::vector<double> values(dim);
  // Per clause: mask of variables it touches and the assignment that falsifies it.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> falsifier;
  falsifier.reserve(f.clauses().size());
  for (const auto& clause : f.clauses()) {
    std::uint64_t mask = 0;
    std::uint64_t bad = 0;
    for (int lit : clause) {
      const std::uint64_t bit = std::uint64_t{1} << (std::abs(lit) - 1);
      mask |= bit;
      if (lit < 0) bad |= bit;
    }
    falsifier.emplace_back(mask, bad);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    int sat = 0;
    for (const auto& [mask, bad] : falsifier) sat += ((i & mask) != bad) ? 1 : 0;
    values[i] = sat;
  }
  return DiagonalObservable(std::move(values));
}

QuboProblem maxsat_qubo(const CnfFormula& f) {
  if (f.max_clause_width() > 3) throw SizeError("QUBO export supports clauses of width <= 3");
  int n_ancilla = 0;
  for (const auto& clause : f.clauses()) n_ancilla += clause.size() == 3 ? 1 : 0;
  QuboProblem q(f.n_vars() + n_ancilla);
  int next_ancilla = f.n_vars();
  for (const auto& clause : f.clauses()) {
    if (clause.size() == 1) {
      add_affine(q, literal_false(clause[0]), 1.0);
    } else if (clause.size() == 2) {
      add_affine_product(q, literal_false(clause[0]), literal_false(clause[1]), 1.0);
    } else {
      // y1 y2 y3 = min_w [ w (S - 1) + P2 - S + 1 ], S = sum y, P2 = sum_{i<j} y_i y_j.
      const Affine y[3] = {literal_false(clause[0]), literal_false(clause[1]), literal_false(clause[2])};
      const Affine w{next_ancilla++, 0.0, 1.0};
      for (const auto& yi : y) {
        add_affine_product(q, w, yi, 1.0);
        add_affine(q, yi, -1.0);
      }
      add_affine(q, w, -1.0);
      add_affine_product(q, y[0], y[1], 1.0);
      add_affine_product(q, y[0], y[2], 1.0);
      add_affine_product(q, y[1], y[2], 1.0);
      q.add_offset(1.0);
    }
  }
  return q;
}

// ---------------------------------------------------------------------------

IsingHamiltonian sherrington_kirkpatrick(int n, std::uint64_t seed) {
  if (n < 2) throw SizeError("Sherrington-Kirkpatrick model needs n >= 2");
  Rng rng(seed);
  IsingHamiltonian h(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double a = rng.normal();
      h.set_coupling(i, k, -0.5 * a * scale);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------

PaintShopSequence::PaintShopSequence(std::vector<int> sequence) : seq_(std::move(sequence)) {
  std::map<int, int> index;
  std::map<int, int> count;
  car_index_.resize(seq_.size());
  first_.resize(seq_.size());
  for (std::size_t p = 0; p < seq_.size(); ++p) {
    const int car = seq_[p];
    auto [it, inserted] = index.try_emplace(car, static_cast<int>(index.size()));
    car_index_[p] = it->second;
    first_[p] = inserted ? 1 : 0;
    ++count[car];
  }
  for (const auto& [car, c] : count) {
    if (c != 2) {
      throw EncodingError("car " + std::to_string(car) + " appears " + std::to_string(c) +
                          " times; every car must appear exactly twice");
    }
  }
  n_cars_ = static_cast<int>(index.size());
  if (n_cars_ == 0) throw EncodingError("paint-shop sequence is empty");
}

QuboProblem paintshop_qubo(const PaintShopSequence& s) {
  QuboProblem q(s.n_cars());
  auto color = [&](int p) { return s.is_first(p) ? Affine{s.car_at(p), 0.0, 1.0} : Affine{s.car_at(p), 1.0, -1.0}; };
  for (int p = 0; p + 1 < s.length(); ++p) {
    const Affine u = color(p);
    const Affine v = color(p + 1);
    // change indicator u + v - 2 u v
    add_affine(q, u, 1.0);
    add_affine(q, v, 1.0);
    add_affine_product(q, u, v, -2.0);
  }
  return q;
}

int paint_changes(const PaintShopSequence& s, const BitString& first_colors) {
  if (first_colors.size() != s.n_cars()) throw SizeError("coloring length does not match car count");
  int changes = 0;
  int previous = -1;
  for (int p = 0; p < s.length(); ++p) {
    const int base = first_colors.bits[s.car_at(p)];
    const int colour = s.is_first(p) ? base : 1 - base;
    if (previous >= 0 && colour != previous) ++changes;
    previous = colour;
  }
  return changes;
}

// ---------------------------------------------------------------------------

QuboProblem tsp_qubo(std::span<const double> distances, int n_cities, std::optional<double> penalty) {
  if (n_cities < 2 || n_cities > 6) throw SizeError("TSP encoding supports 2..6 cities");
  const auto n = static_cast<std::size_t>(n_cities);
  if (distances.size() != n * n) throw SizeError("distance matrix storage does not match n_cities");
  double max_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(distances[i * n + j] - distances[j * n + i]) > 1e-12) {
        throw EncodingError("TSP distance matrix must be symmetric");
      }
      max_d = std::max(max_d, distances[i * n + j]);
    }
  }
  const double lambda = penalty.value_or(2.0 * n_cities * max_d);
  QuboProblem q(n_cities * n_cities);
  auto var = [n_cities](int city, int pos) { return city * n_cities + pos; };

  for (int p = 0; p < n_cities; ++p) {
    const int next = (p + 1) % n_cities;
    for (int a = 0; a < n_cities; ++a) {
      for (int b = 0; b < n_cities; ++b) {
        if (a == b) continue;
        q.add_product(var(a, p), var(b, next), distances[a * n + b]);
      }
    }
  }
  // lambda (1 - sum x)^2 = lambda (1 - sum x + sum_{i != j} x_i x_j) for each one-hot group
  auto one_hot = [&](auto&& member) {
    q.add_offset(lambda);
    for (int i = 0; i < n_cities; ++i) {
      q.add_linear(member(i), -lambda);
      for (int j = i + 1; j < n_cities; ++j) q.add_product(member(i), member(j), 2.0 * lambda);
    }
  };
  for (int c = 0; c < n_cities; ++c) one_hot([&](int p) { return var(c, p); });
  for (int p = 0; p < n_cities; ++p) one_hot([&](int c) { return var(c, p); });
  return q;
}

}  // namespace nisq

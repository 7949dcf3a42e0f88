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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nisq/spectrum.hpp"
#include "nisq/statevector.hpp"

namespace nisq {

/// Assignment of binary variables. bits[i] is variable i, which is also bit i
/// of the computational basis index.
struct BitString {
  std::vector<std::uint8_t> bits;

  static BitString from_index(std::uint64_t index, int n_vars);
  std::uint64_t index() const;
  int size() const noexcept { return static_cast<int>(bits.size()); }
  bool operator==(const BitString&) const = default;
};

/// E(x) = sum_{n != m} Q_nm x_n x_m + sum_n c_n x_n + offset, with Q symmetric
/// and zero on the diagonal (linear terms live in c). The double sum runs over
/// ordered pairs, so a product x_i x_j carries weight 2 Q_ij.
class QuboProblem {
 public:
  QuboProblem() = default;
  explicit QuboProblem(int n_vars);
  /// Validates symmetry (1e-12) and a zero diagonal; q is row-major n x n.
  QuboProblem(int n_vars, std::vector<double> q, std::vector<double> c, double offset);

  int n_vars() const noexcept { return n_; }
  double q(int i, int j) const { return q_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const double> c() const noexcept { return c_; }
  double c(int i) const { return c_[i]; }
  double offset() const noexcept { return offset_; }

  /// Adds coef * x_i x_j. For i == j this is the linear term coef * x_i.
  void add_product(int i, int j, double coef);
  void add_linear(int i, double coef);
  void add_offset(double value) { offset_ += value; }

  double energy(const BitString& x) const;
  double energy(std::uint64_t index) const;

 private:
  void check_var(int i) const;

  int n_ = 0;
  std::vector<double> q_;
  std::vector<double> c_;
  double offset_ = 0.0;
};

/// H(s) = -(sum_n a_n s_n + sum_{n != m} J_nm s_n s_m) + offset with spins
/// s = 2x - 1, J symmetric with zero diagonal, sum over ordered pairs.
class IsingHamiltonian {
 public:
  IsingHamiltonian() = default;
  explicit IsingHamiltonian(int n_spins);
  IsingHamiltonian(int n_spins, std::vector<double> fields, std::vector<double> couplings, double offset);

  int n_spins() const noexcept { return n_; }
  double field(int i) const { return a_[i]; }
  double coupling(int i, int j) const { return j_[static_cast<std::size_t>(i) * n_ + j]; }
  double offset() const noexcept { return offset_; }

  void set_field(int i, double value);
  /// Sets J_ij = J_ji = value (i != j).
  void set_coupling(int i, int j, double value);
  void add_offset(double value) { offset_ += value; }

  /// Energy of the spin configuration read from the basis index
  /// (bit b maps to spin 2b - 1).
  double energy(std::uint64_t index) const;

 private:
  int n_ = 0;
  std::vector<double> a_;
  std::vector<double> j_;
  double offset_ = 0.0;
};

/// Change of variables s = 2x - 1: a_nm = -Q_nm / 4, a_n = -(sum_m Q_nm + c_n) / 2.
IsingHamiltonian qubo_to_ising(const QuboProblem& q);
/// Inverse of qubo_to_ising.
QuboProblem ising_to_qubo(const IsingHamiltonian& h);

/// values[i] = Ising energy at basis index i. n_spins <= 14.
DiagonalObservable ising_to_diagonal(const IsingHamiltonian& h);
/// values[i] = QUBO energy at basis index i. n_vars <= 14.
DiagonalObservable qubo_to_diagonal(const QuboProblem& q);

/// Pauli-operator form of the Ising Hamiltonian. Since s = 2b - 1 = -Z, the
/// field term becomes +a_n Z_n; the offset is an identity term.
std::vector<PauliTerm> ising_pauli_terms(const IsingHamiltonian& h);

// ---------------------------------------------------------------------------
// MaxCut

using Edge = std::pair<int, int>;

/// Minimizing the energy maximizes the cut: energy(x) = -cut(x), offset 0.
QuboProblem maxcut_qubo(std::span<const Edge> edges, int n_nodes);
int cut_size(std::span<const Edge> edges, const BitString& x);

// ---------------------------------------------------------------------------
// SAT

/// CNF formula with DIMACS-style literals: +v / -v for variable v in 1..n_vars.
class CnfFormula {
 public:
  CnfFormula() = default;
  /// Validates every clause (non-empty, |literal| <= n_vars, no v and -v
  /// together). Repeated literals inside a clause are merged.
  CnfFormula(int n_vars, std::vector<std::vector<int>> clauses);

  int n_vars() const noexcept { return n_; }
  int n_clauses() const noexcept { return static_cast<int>(clauses_.size()); }
  const std::vector<std::vector<int>>& clauses() const noexcept { return clauses_; }
  double ratio() const { return n_ == 0 ? 0.0 : static_cast<double>(clauses_.size()) / n_; }
  int max_clause_width() const;

  int count_satisfied(const BitString& x) const;
  bool satisfied_by(const BitString& x) const { return count_satisfied(x) == n_clauses(); }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> clauses_;
};

/// m clauses, each on k distinct variables chosen uniformly with independent
/// fair-coin signs; clauses are independent (duplicates allowed). Literals in
/// a clause are sorted by variable.
CnfFormula random_ksat(int n_vars, int n_clauses, int k, std::uint64_t seed);

/// Satisfied-clause count C(x) as a diagonal cost. n_vars <= 14.
DiagonalObservable maxsat_diagonal(const CnfFormula& f);

/// Penalty QUBO for clauses of width <= 3. Variables 0..n_vars-1 are the
/// formula variables; each 3-literal clause adds one ancilla after them.
/// For every assignment x, min over ancillas of energy(x, a) equals the
/// number of unsatisfied clauses, so satisfied(x) = n_clauses - that minimum.
QuboProblem maxsat_qubo(const CnfFormula& f);

// ---------------------------------------------------------------------------
// Sherrington-Kirkpatrick

/// Zero fields and couplings chosen so that energy(s) = (1/sqrt n) sum_{i<k} a_ik s_i s_k
/// with a_ik i.i.d. standard normal; in the ordered-pair storage this is
/// J_ik = -a_ik / (2 sqrt n).
IsingHamiltonian sherrington_kirkpatrick(int n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Binary paint shop

/// Sequence of car identifiers in which every car appears exactly twice.
class PaintShopSequence {
 public:
  PaintShopSequence() = default;
  explicit PaintShopSequence(std::vector<int> sequence);

  const std::vector<int>& sequence() const noexcept { return seq_; }
  int n_cars() const noexcept { return n_cars_; }
  int length() const noexcept { return static_cast<int>(seq_.size()); }
  /// Dense car index (order of first appearance) at each position.
  int car_at(int position) const { return car_index_[position]; }
  /// True when this position is the car's first occurrence.
  bool is_first(int position) const { return first_[position] != 0; }

 private:
  std::vector<int> seq_;
  std::vector<int> car_index_;
  std::vector<std::uint8_t> first_;
  int n_cars_ = 0;
};

/// Variable x_c is the color of car c's first occurrence; the second
/// occurrence gets the complement. energy(x) is the number of color changes.
QuboProblem paintshop_qubo(const PaintShopSequence& s);
int paint_changes(const PaintShopSequence& s, const BitString& first_colors);

// ---------------------------------------------------------------------------
// Travelling salesman

/// One-hot encoding: variable city * n + position. Feasible assignments have
/// energy equal to the tour length; every violated constraint costs at least
/// `penalty`. Default penalty is 2 n max(d). distances is row-major n x n,
/// symmetric, n <= 6.
QuboProblem tsp_qubo(std::span<const double> distances, int n_cities, std::optional<double> penalty = std::nullopt);

}  // namespace nisq

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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nisq/problems.hpp"

namespace nisq::io {

// DIMACS CNF: "c" comment lines, one "p cnf <vars> <clauses>" header, then
// zero-terminated clauses that may span lines.
CnfFormula read_dimacs(std::istream& in);
CnfFormula read_dimacs(const std::filesystem::path& path);
void write_dimacs(std::ostream& out, const CnfFormula& f);

struct EdgeList {
  int n_nodes = 0;
  std::vector<Edge> edges;
};

// Whitespace-separated "u v" pairs, 0-indexed, '#' starts a comment.
// n_nodes is one past the largest index seen.
EdgeList read_edge_list(std::istream& in);
EdgeList read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const EdgeList& g);

// {"n": int, "c": [...], "q": [[i, j, value], ...], "offset": real}
// with sparse upper-triangular (i < j) entries. Each entry contributes
// value * x_i * x_j to the energy.
QuboProblem read_qubo_json(std::istream& in);
QuboProblem read_qubo_json(const std::filesystem::path& path);
void write_qubo_json(std::ostream& out, const QuboProblem& q);

}  // namespace nisq::io

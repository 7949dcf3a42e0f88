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

#include "nisq/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "nisq/error.hpp"

namespace nisq::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

CnfFormula read_dimacs(std::istream& in) {
  int n_vars = -1;
  int n_clauses = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "%") break;  // SATLIB trailer
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> n_vars >> n_clauses) || fmt != "cnf" || n_vars < 0 || n_clauses < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed DIMACS header");
      }
      continue;
    }
    if (n_vars < 0) throw ParseError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad literal '" + tok + "'");
      }
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (n_vars < 0) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) clauses.push_back(std::move(current));
  if (static_cast<int>(clauses.size()) != n_clauses) {
    throw ParseError("header declares " + std::to_string(n_clauses) + " clauses, found " +
                     std::to_string(clauses.size()));
  }
  return CnfFormula(n_vars, std::move(clauses));
}

CnfFormula read_dimacs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.n_vars() << ' ' << f.n_clauses() << '\n';
  for (const auto& clause : f.clauses()) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

EdgeList read_edge_list(std::istream& in) {
  EdgeList g;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0;
    long long v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v) || u < 0 || v < 0) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two non-negative node indices");
    }
    std::string extra;
    if (ls >> extra) throw ParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    g.n_nodes = std::max<int>(g.n_nodes, static_cast<int>(std::max(u, v)) + 1);
  }
  return g;
}

EdgeList read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const EdgeList& g) {
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

QuboProblem read_qubo_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    const int n = j.at("n").get<int>();
    QuboProblem q(n);
    if (j.contains("c")) {
      const auto c = j.at("c").get<std::vector<double>>();
      if (static_cast<int>(c.size()) != n) throw ParseError("QUBO 'c' must have n entries");
      for (int i = 0; i < n; ++i) q.add_linear(i, c[i]);
    }
    if (j.contains("q")) {
      for (const auto& entry : j.at("q")) {
        if (!entry.is_array() || entry.size() != 3) throw ParseError("QUBO 'q' entries must be [i, j, value]");
        q.add_product(entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>());
      }
    }
    q.add_offset(j.value("offset", 0.0));
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid QUBO JSON: ") + e.what());
  }
}

QuboProblem read_qubo_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_qubo_json(in);
}

void write_qubo_json(std::ostream& out, const QuboProblem& q) {
  nlohmann::json j;
  j["n"] = q.n_vars();
  j["c"] = std::vector<double>(q.c().begin(), q.c().end());
  auto entries = nlohmann::json::array();
  for (int i = 0; i < q.n_vars(); ++i) {
    for (int k = i + 1; k < q.n_vars(); ++k) {
      if (q.q(i, k) != 0.0) entries.push_back({i, k, 2.0 * q.q(i, k)});
    }
  }
  j["q"] = std::move(entries);
  j["offset"] = q.offset();
  out << j.dump(2) << '\n';
}

}  // namespace nisq::io

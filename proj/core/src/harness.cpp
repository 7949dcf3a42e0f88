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

#include "nisq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nisq/anneal.hpp"
#include "nisq/baselines.hpp"
#include "nisq/dqc.hpp"
#include "nisq/error.hpp"
#include "nisq/parallel.hpp"
#include "nisq/problems.hpp"
#include "nisq/qaoa.hpp"
#include "nisq/random.hpp"

#ifndef NISQ_VERSION
#define NISQ_VERSION "0.0.0"
#endif

namespace nisq {

namespace {

using Metrics = std::map<std::string, double>;

int as_int(double v, const char* what) {
  if (!std::isfinite(v) || v != std::nearbyint(v)) {
    throw DomainError(std::string(what) + " must be an integer, got " + std::to_string(v));
  }
  return static_cast<int>(v);
}

Metrics run_satscan(const RunContext& ctx) {
  const int n = as_int(ctx.get("n", 20), "n");
  const double ratio = ctx.get("ratio", 4.26);
  const int m = std::max(1, static_cast<int>(std::lround(ratio * n)));
  const auto stats = dpll_count(random_ksat(n, m, 3, ctx.seed));
  return {{"satisfiable", stats.satisfiable ? 1.0 : 0.0},
          {"backtracks", static_cast<double>(stats.backtracks)},
          {"decisions", static_cast<double>(stats.decisions)},
          {"n_clauses", static_cast<double>(m)}};
}

Metrics run_anneal_cell(const RunContext& ctx) {
  const int n = as_int(ctx.get("n", 8), "n");
  const int protocol = as_int(ctx.get("protocol", 1), "protocol");
  const double g = ctx.get("g", 1.0);
  const double dt = ctx.get("dt", 1e-3);
  const auto problem = random_energy_problem(n, ctx.problem_seed);
  const auto result = run_anneal(problem, AnnealProtocol::table_protocol(protocol, g), dt);
  return {{"excitation", result.excitation_number},
          {"fidelity", result.ground_state_fidelity},
          {"residual_energy", result.residual_energy}};
}

Metrics run_qaoa_cell(const RunContext& ctx) {
  const int n = as_int(ctx.get("n", 6), "n");
  const double ratio = ctx.get("ratio", 4.0);
  const int m = std::max(1, static_cast<int>(std::lround(ratio * n)));
  const auto cost = maxsat_diagonal(random_ksat(n, m, 3, ctx.problem_seed));
  QaoaOptions options;
  options.p = as_int(ctx.get("p", 1), "p");
  options.starts = as_int(ctx.get("starts", 10), "starts");
  options.budget = as_int(ctx.get("budget", 20000), "budget");
  options.seed = ctx.seed;
  const auto outcome = optimize_qaoa(cost, options);
  return {{"qaoa_ratio", outcome.approximation_ratio},
          {"expectation", outcome.expectation},
          {"sat_optimum", outcome.c_max},
          {"evaluations", static_cast<double>(outcome.n_evaluations)},
          {"converged", outcome.converged ? 1.0 : 0.0}};
}

Metrics run_dqc_cell(const RunContext& ctx) {
  const int qubits = as_int(ctx.get("qubits", 4), "qubits");
  const int layers = as_int(ctx.get("layers", 3), "layers");
  const int map = as_int(ctx.get("map", 2), "map");
  if (map < 0 || map > 2) throw DomainError("map must be 0 (fourier), 1 (chebyshev) or 2 (tower)");
  const auto kind = static_cast<FeatureMapKind>(map);
  auto model = QuantumModel::make(FeatureMap::make(kind, qubits),
                                  VariationalAnsatz::random(qubits, layers, ctx.seed, ctx.get("init_scale", 1.0)));
  TrainOptions options;
  options.max_iters = as_int(ctx.get("iters", 600), "iters");
  options.learning_rate = ctx.get("lr", options.learning_rate);
  options.momentum = ctx.get("momentum", options.momentum);
  const auto problem = decay_problem(as_int(ctx.get("points", 20), "points"));
  const auto result = train(std::move(model), problem, options);
  const double error =
      max_grid_error(result.model, [](double x) { return std::exp(-x); }, problem.lower, problem.upper, 50);
  return {{"best_loss", result.best_loss},
          {"final_loss", result.loss_trace.back()},
          {"best_iteration", static_cast<double>(result.best_iteration)},
          {"max_grid_error", error}};
}

Metrics run_paintshop_cell(const RunContext& ctx) {
  const int cars = as_int(ctx.get("cars", 8), "cars");
  if (cars < 1 || cars > 20) throw DomainError("paintshop campaign supports 1..20 cars");
  std::vector<int> seq;
  for (int c = 0; c < cars; ++c) seq.insert(seq.end(), {c, c});
  Rng rng(ctx.seed);
  for (std::size_t i = seq.size() - 1; i > 0; --i) std::swap(seq[i], seq[rng.below(i + 1)]);
  const PaintShopSequence sequence(seq);
  const auto optimum = brute_force_minimum(paintshop_qubo(sequence));
  const auto greedy = greedy_paintshop(sequence);
  return {{"optimum", std::round(optimum.energy)},
          {"greedy", static_cast<double>(greedy.changes)},
          {"greedy_excess", static_cast<double>(greedy.changes) - std::round(optimum.energy)}};
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, ExperimentFn> experiments{{"satscan", run_satscan},
                                                  {"anneal", run_anneal_cell},
                                                  {"qaoa", run_qaoa_cell},
                                                  {"dqc", run_dqc_cell},
                                                  {"paintshop", run_paintshop_cell}};
};

Registry& registry() {
  static Registry r;
  return r;
}

std::vector<double> read_number_list(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array()) throw ParseError("grid axis '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError("grid axis '" + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

const char* version() noexcept { return NISQ_VERSION; }

void ExperimentConfig::validate() const {
  if (experiment.empty()) throw DomainError("experiment name is empty");
  if (grid.empty()) throw DomainError("parameter grid is empty");
  for (const auto& [axis, values] : grid) {
    if (values.empty()) throw DomainError("grid axis '" + axis + "' is empty");
  }
  if (instances < 1) throw DomainError("instances must be at least 1");
  if (workers < 0) throw DomainError("workers must be non-negative");
}

std::size_t ExperimentConfig::n_cells() const {
  std::size_t count = 1;
  for (const auto& [axis, values] : grid) count *= values.size();
  return grid.empty() ? 0 : count;
}

std::map<std::string, double> ExperimentConfig::cell(std::size_t index) const {
  if (index >= n_cells()) throw IndexError("cell index " + std::to_string(index) + " out of range");
  std::map<std::string, double> out;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    const auto& values = it->second;
    out[it->first] = values[index % values.size()];
    index /= values.size();
  }
  return out;
}

ExperimentConfig parse_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  ExperimentConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      if (!value.is_string()) throw ParseError("'experiment' must be a string");
      config.experiment = value.get<std::string>();
    } else if (key == "grid") {
      if (!value.is_object()) throw ParseError("'grid' must be an object");
      for (const auto& [axis, list] : value.items()) config.grid[axis] = read_number_list(list, axis);
    } else if (key == "params") {
      if (!value.is_object()) throw ParseError("'params' must be an object");
      for (const auto& [name, v] : value.items()) {
        if (!v.is_number()) throw ParseError("param '" + name + "' must be a number");
        config.params[name] = v.get<double>();
      }
    } else if (key == "instances" || key == "workers") {
      if (!value.is_number_integer()) throw ParseError("'" + key + "' must be an integer");
      (key == "instances" ? config.instances : config.workers) = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ParseError("'seed' must be a non-negative integer");
      config.seed = value.get<std::uint64_t>();
    } else if (key == "output") {
      if (!value.is_string()) throw ParseError("'output' must be a string");
      config.output = value.get<std::string>();
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  if (!j.contains("experiment")) throw ParseError("config is missing 'experiment'");
  if (!j.contains("grid")) throw ParseError("config is missing 'grid'");
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

double RunContext::get(const std::string& key, double fallback) const {
  if (auto it = cell.find(key); it != cell.end()) return it->second;
  if (auto it = params.find(key); it != params.end()) return it->second;
  return fallback;
}

void register_experiment(const std::string& name, ExperimentFn fn) {
  if (name.empty() || !fn) throw DomainError("experiment needs a name and a function");
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  r.experiments[name] = std::move(fn);
}

std::vector<std::string> registered_experiments() {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  std::vector<std::string> names;
  for (const auto& [name, fn] : r.experiments) names.push_back(name);
  return names;
}

int resolve_workers(std::optional<int> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("NISQ_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<RunRecord> run_campaign(const ExperimentConfig& config) {
  config.validate();
  ExperimentFn fn;
  {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    auto it = r.experiments.find(config.experiment);
    if (it == r.experiments.end()) throw DomainError("unknown experiment '" + config.experiment + "'");
    fn = it->second;
  }

  const std::size_t n_cells = config.n_cells();
  const auto n_inst = static_cast<std::size_t>(config.instances);
  std::vector<RunRecord> records(n_cells * n_inst);
  const int workers = resolve_workers(config.workers > 0 ? std::optional<int>(config.workers) : std::nullopt);

  parallel_for(records.size(), workers, [&](std::size_t task) {
    const std::size_t cell_index = task / n_inst;
    const int instance = static_cast<int>(task % n_inst);
    RunRecord& rec = records[task];
    rec.experiment = config.experiment;
    rec.cell_index = cell_index;
    rec.cell = config.cell(cell_index);
    rec.instance = instance;
    rec.seed = derive_seed(config.seed, cell_index, static_cast<std::uint64_t>(instance));
    rec.problem_seed = derive_seed(config.seed, kSharedCell, static_cast<std::uint64_t>(instance));
    rec.version = version();
    const RunContext ctx{rec.cell, config.params, instance, rec.seed, rec.problem_seed};
    const auto start = std::chrono::steady_clock::now();
    rec.metrics = fn(ctx);
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (rec.metrics.empty()) throw Error("experiment '" + config.experiment + "' returned no metrics");
  });
  return records;
}

std::vector<SatPhaseRow> sat_phase_experiment(int n, const std::vector<double>& ratios, int instances,
                                              std::uint64_t seed, int workers) {
  if (n < 3 || n > 40) throw SizeError("SAT phase experiment supports 3 <= n <= 40, got " + std::to_string(n));
  ExperimentConfig config;
  config.experiment = "satscan";
  config.grid["ratio"] = ratios;
  config.params["n"] = n;
  config.instances = instances;
  config.seed = seed;
  config.workers = std::max(workers, 1);
  const auto records = run_campaign(config);

  std::vector<SatPhaseRow> rows;
  const auto n_inst = static_cast<std::size_t>(instances);
  for (std::size_t c = 0; c < ratios.size(); ++c) {
    SatPhaseRow row;
    row.ratio = ratios[c];
    row.n = n;
    row.instances = instances;
    std::vector<double> backtracks;
    double sat = 0.0;
    for (std::size_t k = 0; k < n_inst; ++k) {
      const auto& m = records[c * n_inst + k].metrics;
      sat += m.at("satisfiable");
      backtracks.push_back(m.at("backtracks"));
    }
    row.p_sat = sat / instances;
    std::sort(backtracks.begin(), backtracks.end());
    const std::size_t mid = backtracks.size() / 2;
    row.median_backtracks =
        backtracks.size() % 2 == 1 ? backtracks[mid] : 0.5 * (backtracks[mid - 1] + backtracks[mid]);
    double total = 0.0;
    for (double b : backtracks) total += b;
    row.mean_backtracks = total / instances;
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> sat_crossing_ratio(const std::vector<SatPhaseRow>& rows) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    if (a.p_sat >= 0.5 && b.p_sat < 0.5) {
      const double t = (a.p_sat - 0.5) / (a.p_sat - b.p_sat);
      return a.ratio + t * (b.ratio - a.ratio);
    }
  }
  return std::nullopt;
}

double sat_peak_ratio(const std::vector<SatPhaseRow>& rows) {
  if (rows.empty()) throw DomainError("no SAT phase rows");
  const auto it = std::max_element(rows.begin(), rows.end(), [](const SatPhaseRow& a, const SatPhaseRow& b) {
    return a.median_backtracks < b.median_backtracks;
  });
  return it->ratio;
}

}  // namespace nisq

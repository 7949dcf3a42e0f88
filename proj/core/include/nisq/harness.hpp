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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nisq {

/// Library version string baked in at build time.
const char* version() noexcept;

/// Campaign description. Every grid axis is a list of values; cells are the
/// Cartesian product over axes in key order, with the last key varying
/// fastest. `params` holds scalar settings shared by every cell.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::vector<double>> grid;
  std::map<std::string, double> params;
  int instances = 1;
  std::uint64_t seed = 0;
  /// 0 picks the default (see resolve_workers).
  int workers = 0;
  std::string output;

  /// Throws DomainError for an empty name or grid, an empty axis or
  /// instances < 1.
  void validate() const;
  std::size_t n_cells() const;
  /// Grid values of cell `index`.
  std::map<std::string, double> cell(std::size_t index) const;
};

/// Parses the JSON config schema
///   {"experiment": str, "grid": {axis: [num, ...]}, "params": {name: num},
///    "instances": int, "seed": int, "workers": int, "output": str}
/// Only "experiment" and "grid" are required. Unknown keys and wrong types
/// throw ParseError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
  std::string experiment;
  std::size_t cell_index = 0;
  std::map<std::string, double> cell;
  int instance = 0;
  /// derive_seed(master, cell_index, instance); reproduces this run.
  std::uint64_t seed = 0;
  /// derive_seed(master, kSharedCell, instance); identical across cells so
  /// experiments can compare cells on matched problem instances.
  std::uint64_t problem_seed = 0;
  std::map<std::string, double> metrics;
  double wall_ms = 0.0;
  std::string version;

  bool operator==(const RunRecord&) const = default;
};

inline constexpr std::uint64_t kSharedCell = ~std::uint64_t{0};

struct RunContext {
  const std::map<std::string, double>& cell;
  const std::map<std::string, double>& params;
  int instance;
  std::uint64_t seed;
  std::uint64_t problem_seed;

  /// Cell value, else param value, else `fallback`.
  double get(const std::string& key, double fallback) const;
};

using ExperimentFn = std::function<std::map<std::string, double>(const RunContext&)>;

/// Adds or replaces an experiment. The built-in experiments (satscan,
/// anneal, qaoa, dqc, paintshop) are always registered.
void register_experiment(const std::string& name, ExperimentFn fn);
std::vector<std::string> registered_experiments();

/// Worker count precedence: flag > NISQ_WORKERS > hardware concurrency.
int resolve_workers(std::optional<int> flag);

/// Runs cells x instances, each with its own derived seed, on the configured
/// workers. Records are ordered by (cell_index, instance) whatever the
/// schedule. Throws DomainError for an unknown experiment and rethrows the
/// first failing task's exception.
std::vector<RunRecord> run_campaign(const ExperimentConfig& config);

struct SatPhaseRow {
  double ratio = 0.0;
  int n = 0;
  int instances = 0;
  double p_sat = 0.0;
  double median_backtracks = 0.0;
  double mean_backtracks = 0.0;
};

/// Random 3-SAT at each ratio solved by DPLL; one row per ratio, in grid order.
std::vector<SatPhaseRow> sat_phase_experiment(int n, const std::vector<double>& ratios, int instances,
                                              std::uint64_t seed, int workers = 1);

/// Ratio where P(sat) first drops through 0.5, linearly interpolated between
/// grid points; nullopt if it never does.
std::optional<double> sat_crossing_ratio(const std::vector<SatPhaseRow>& rows);

/// Ratio with the largest median backtrack count (first on ties).
double sat_peak_ratio(const std::vector<SatPhaseRow>& rows);

}  // namespace nisq

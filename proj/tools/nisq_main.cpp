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

// nisq: command-line front end for the experiment campaigns.
//
//   nisq satscan   --n 20 --instances 100 --out sat.csv
//   nisq anneal    --n 8 --instances 50 --g 1,2,3,5,8 --out anneal.csv
//   nisq qaoa      --problem graph.txt --p 2 --starts 10 --out qaoa.csv
//   nisq qaoa      --sweep --n 6 --ratios 1,2,4,6 --p-list 1,2,3 --out hardness.csv
//   nisq dqc       --ode decay --qubits 4 --map tower --iters 600 --out trace.csv
//   nisq paintshop --cars 8 --instances 20 --out paint.csv
//   nisq campaign  --config campaign.json
//
// Exit codes: 0 success, 2 configuration error, 3 runtime or divergence error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nisq/anneal.hpp"
#include "nisq/baselines.hpp"
#include "nisq/dqc.hpp"
#include "nisq/error.hpp"
#include "nisq/harness.hpp"
#include "nisq/io.hpp"
#include "nisq/problems.hpp"
#include "nisq/qaoa.hpp"
#include "nisq/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

/// Raised for anything the user must fix in flags or the config file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::optional<int> workers;
  std::string out;
  std::string config_path;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  std::optional<nisq::ExperimentConfig> config;

  void load() {
    if (config_path.empty()) return;
    try {
      config = nisq::load_config(config_path);
    } catch (const nisq::Error& e) {
      throw ConfigError(e.what());
    }
    if (seed_opt->count() == 0) seed = config->seed;
    if (workers_opt->count() == 0 && config->workers > 0) workers = config->workers;
    if (out_opt->count() == 0 && !config->output.empty()) out = config->output;
  }

  int resolved_workers() const { return nisq::resolve_workers(workers); }

  /// Config "params" entry for an option the user did not pass.
  template <typename T>
  void fill(CLI::Option* opt, const std::string& key, T& value) const {
    if (!config || opt->count() > 0) return;
    if (auto it = config->params.find(key); it != config->params.end()) value = static_cast<T>(it->second);
  }

  void write(const nisq::CsvTable& table) const {
    if (out.empty()) {
      table.write(std::cout);
    } else {
      table.save(out);
    }
  }
};

std::vector<double> ratio_range(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("ratio range needs step > 0 and max >= min");
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) out.push_back(lo + step * i);
  return out;
}

// ---------------------------------------------------------------------------

struct SatscanArgs {
  int n = 20;
  double ratio_min = 1.0;
  double ratio_max = 8.0;
  double ratio_step = 0.25;
  int instances = 100;
  CLI::Option* n_opt = nullptr;
  CLI::Option* inst_opt = nullptr;
};

void run_satscan(const Globals& g, SatscanArgs a) {
  g.fill(a.n_opt, "n", a.n);
  g.fill(a.inst_opt, "instances", a.instances);
  const auto rows = nisq::sat_phase_experiment(a.n, ratio_range(a.ratio_min, a.ratio_max, a.ratio_step), a.instances,
                                               g.seed, g.resolved_workers());
  nisq::CsvTable table({"ratio", "n", "instances", "p_sat", "median_backtracks", "mean_backtracks"});
  for (const auto& r : rows) {
    table.row().add(r.ratio).add(r.n).add(r.instances).add(r.p_sat).add(r.median_backtracks).add(r.mean_backtracks);
  }
  g.write(table);
  const auto crossing = nisq::sat_crossing_ratio(rows);
  std::cerr << "P(sat) = 0.5 crossing: " << (crossing ? nisq::format_csv_double(*crossing) : std::string("none"))
            << ", median backtrack peak at ratio " << nisq::format_csv_double(nisq::sat_peak_ratio(rows)) << '\n';
}

// ---------------------------------------------------------------------------

struct AnnealArgs {
  int n = 8;
  int instances = 50;
  std::vector<double> g_grid{1.0, 2.0, 3.0, 5.0, 8.0};
  std::vector<int> protocols{1, 2, 3};
  double dt = 1e-3;
  CLI::Option* n_opt = nullptr;
  CLI::Option* inst_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
};

void run_anneal(const Globals& g, AnnealArgs a) {
  g.fill(a.n_opt, "n", a.n);
  g.fill(a.inst_opt, "instances", a.instances);
  g.fill(a.dt_opt, "dt", a.dt);
  nisq::ProtocolComparisonOptions options;
  options.dt = a.dt;
  options.workers = g.resolved_workers();
  options.protocols = a.protocols;
  const auto rows = nisq::protocol_comparison(a.n, a.instances, a.g_grid, g.seed, options);
  nisq::CsvTable table({"protocol", "g", "instance_seed", "n", "excitation", "fidelity", "residual_energy"});
  for (const auto& r : rows) {
    table.row()
        .add(r.protocol)
        .add(r.g)
        .add(r.instance_seed)
        .add(r.n)
        .add(r.excitation)
        .add(r.fidelity)
        .add(r.residual_energy);
  }
  g.write(table);
}

// ---------------------------------------------------------------------------

struct QaoaArgs {
  std::string problem;
  int p = 1;
  int starts = 10;
  int budget = 20000;
  std::string strategy = "multistart";
  bool sweep = false;
  int n = 6;
  std::vector<double> ratios{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  std::vector<int> p_list{1, 2, 3};
  int instances = 10;
  CLI::Option* p_opt = nullptr;
  CLI::Option* starts_opt = nullptr;
  CLI::Option* budget_opt = nullptr;
};

/// Cost to maximize, read by file extension: .json QUBO (C = -energy),
/// .cnf MaxSAT (satisfied clauses), anything else an edge list (cut size).
nisq::DiagonalObservable load_cost(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".cnf") return nisq::maxsat_diagonal(nisq::io::read_dimacs(path));
  nisq::QuboProblem q;
  if (ext == ".json") {
    q = nisq::io::read_qubo_json(path);
  } else {
    const auto graph = nisq::io::read_edge_list(path);
    q = nisq::maxcut_qubo(graph.edges, graph.n_nodes);
  }
  const auto energies = nisq::qubo_to_diagonal(q);
  std::vector<double> cost(energies.values().begin(), energies.values().end());
  for (double& c : cost) c = -c;
  return nisq::DiagonalObservable(std::move(cost));
}

void run_qaoa(const Globals& g, QaoaArgs a) {
  g.fill(a.p_opt, "p", a.p);
  g.fill(a.starts_opt, "starts", a.starts);
  g.fill(a.budget_opt, "budget", a.budget);
  if (a.sweep) {
    nisq::HardnessOptions options{a.starts, a.budget, g.resolved_workers()};
    const auto rows = nisq::hardness_sweep_qaoa(a.n, a.ratios, a.p_list, a.instances, g.seed, options);
    nisq::CsvTable table({"ratio", "p", "instance", "qaoa_ratio", "sat_optimum"});
    for (const auto& r : rows) table.row().add(r.ratio).add(r.p).add(r.instance).add(r.qaoa_ratio).add(r.sat_optimum);
    g.write(table);
    return;
  }
  if (a.problem.empty()) throw ConfigError("qaoa needs --problem <file> or --sweep");
  nisq::DiagonalObservable cost;
  try {
    cost = load_cost(a.problem);
  } catch (const nisq::Error& e) {
    throw ConfigError(e.what());
  }
  nisq::QaoaOptions options;
  options.p = a.p;
  options.starts = a.starts;
  options.budget = a.budget;
  options.seed = g.seed;
  options.strategy = a.strategy == "grid" ? nisq::QaoaStrategy::GridThenLocal : nisq::QaoaStrategy::MultistartLocal;
  const auto outcome = nisq::optimize_qaoa(cost, options);

  std::vector<std::string> header{"problem", "p", "expectation", "c_max", "ratio", "evaluations", "converged"};
  for (int k = 1; k <= a.p; ++k) header.push_back("gamma_" + std::to_string(k));
  for (int k = 1; k <= a.p; ++k) header.push_back("beta_" + std::to_string(k));
  nisq::CsvTable table(header);
  table.row()
      .add(std::filesystem::path(a.problem).filename().string())
      .add(a.p)
      .add(outcome.expectation)
      .add(outcome.c_max)
      .add(outcome.approximation_ratio)
      .add(outcome.n_evaluations)
      .add(outcome.converged ? 1 : 0);
  for (double v : outcome.best_params.gamma) table.add(v);
  for (double v : outcome.best_params.beta) table.add(v);
  g.write(table);
}

// ---------------------------------------------------------------------------

struct DqcArgs {
  std::string ode = "decay";
  int qubits = 4;
  std::string map = "tower";
  int layers = 3;
  int iters = 600;
  double lr = 0.02;
  double momentum = 0.9;
  int points = 20;
  CLI::Option* qubits_opt = nullptr;
  CLI::Option* iters_opt = nullptr;
  CLI::Option* layers_opt = nullptr;
  CLI::Option* lr_opt = nullptr;
};

void run_dqc(const Globals& g, DqcArgs a) {
  g.fill(a.qubits_opt, "qubits", a.qubits);
  g.fill(a.iters_opt, "iters", a.iters);
  g.fill(a.layers_opt, "layers", a.layers);
  g.fill(a.lr_opt, "lr", a.lr);
  const std::map<std::string, nisq::FeatureMapKind> kinds{{"fourier", nisq::FeatureMapKind::FourierDefault},
                                                          {"chebyshev", nisq::FeatureMapKind::ChebyshevDefault},
                                                          {"tower", nisq::FeatureMapKind::ChebyshevTower}};
  const auto problem = nisq::decay_problem(a.points);
  auto model = nisq::QuantumModel::make(nisq::FeatureMap::make(kinds.at(a.map), a.qubits),
                                        nisq::VariationalAnsatz::random(a.qubits, a.layers, g.seed, 1.0));
  nisq::TrainOptions options;
  options.max_iters = a.iters;
  options.learning_rate = a.lr;
  options.momentum = a.momentum;

  nisq::CsvTable table({"iter", "loss", "max_grid_error"});
  const auto reference = [](double x) { return std::exp(-x); };
  const auto result =
      nisq::train(std::move(model), problem, options, [&](int it, double loss, const nisq::QuantumModel& current) {
        table.row().add(it).add(loss).add(nisq::max_grid_error(current, reference, problem.lower, problem.upper, 50));
      });
  g.write(table);
  std::cerr << "best loss " << nisq::format_csv_double(result.best_loss) << " at iteration " << result.best_iteration
            << ", max grid error "
            << nisq::format_csv_double(nisq::max_grid_error(result.model, reference, problem.lower, problem.upper, 50))
            << '\n';
}

// ---------------------------------------------------------------------------

struct PaintshopArgs {
  std::vector<int> sequence;
  int cars = 8;
  int instances = 20;
  CLI::Option* cars_opt = nullptr;
  CLI::Option* inst_opt = nullptr;
};

void run_paintshop(const Globals& g, PaintshopArgs a) {
  g.fill(a.cars_opt, "cars", a.cars);
  g.fill(a.inst_opt, "instances", a.instances);
  if (!a.sequence.empty()) {
    nisq::PaintShopSequence seq;
    try {
      seq = nisq::PaintShopSequence(a.sequence);
    } catch (const nisq::EncodingError& e) {
      throw ConfigError(e.what());
    }
    const auto optimum = nisq::brute_force_minimum(nisq::paintshop_qubo(seq));
    const auto greedy = nisq::greedy_paintshop(seq);
    nisq::CsvTable table({"cars", "optimum", "greedy"});
    table.row().add(seq.n_cars()).add(static_cast<long long>(std::llround(optimum.energy))).add(greedy.changes);
    g.write(table);
    return;
  }
  nisq::ExperimentConfig config;
  config.experiment = "paintshop";
  config.grid["cars"] = {static_cast<double>(a.cars)};
  config.instances = a.instances;
  config.seed = g.seed;
  config.workers = g.resolved_workers();
  const auto records = nisq::run_campaign(config);
  nisq::CsvTable table({"instance", "seed", "cars", "optimum", "greedy"});
  for (const auto& r : records) {
    table.row().add(r.instance).add(r.seed).add(a.cars).add(r.metrics.at("optimum")).add(r.metrics.at("greedy"));
  }
  g.write(table);
}

// ---------------------------------------------------------------------------

void run_campaign_cmd(const Globals& g) {
  if (!g.config) throw ConfigError("campaign needs --config <file>");
  nisq::ExperimentConfig config = *g.config;
  config.seed = g.seed;
  if (g.workers) config.workers = *g.workers;
  config.output = g.out;
  try {
    config.validate();
  } catch (const nisq::DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto names = nisq::registered_experiments();
  if (std::find(names.begin(), names.end(), config.experiment) == names.end()) {
    throw ConfigError("unknown experiment '" + config.experiment + "'");
  }
  const auto records = nisq::run_campaign(config);
  if (config.output.empty()) {
    nisq::write_csv(std::cout, records);
    return;
  }
  const auto format =
      std::filesystem::path(config.output).extension() == ".json" ? nisq::ReportFormat::Json : nisq::ReportFormat::Csv;
  nisq::emit_report(records, config.output, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nisqlab experiment driver"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(nisq::version()));

  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "Master seed");
  g.workers_opt = app.add_option("--workers", g.workers, "Worker threads (default: NISQ_WORKERS, then core count)")
                      ->check(CLI::PositiveNumber);
  g.out_opt = app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--config", g.config_path, "JSON config; flags override its values")->check(CLI::ExistingFile);

  SatscanArgs sat;
  auto* satscan = app.add_subcommand("satscan", "Random 3-SAT phase transition with DPLL");
  sat.n_opt = satscan->add_option("--n", sat.n, "Variables");
  satscan->add_option("--ratio-min", sat.ratio_min);
  satscan->add_option("--ratio-max", sat.ratio_max);
  satscan->add_option("--ratio-step", sat.ratio_step);
  sat.inst_opt = satscan->add_option("--instances", sat.instances)->check(CLI::PositiveNumber);

  AnnealArgs ann;
  auto* anneal = app.add_subcommand("anneal", "Annealing protocol comparison on random-energy problems");
  ann.n_opt = anneal->add_option("--n", ann.n, "Qubits");
  ann.inst_opt = anneal->add_option("--instances", ann.instances)->check(CLI::PositiveNumber);
  anneal->add_option("--g", ann.g_grid, "Schedule strengths")->delimiter(',');
  anneal->add_option("--protocols", ann.protocols, "Protocol numbers")->delimiter(',');
  ann.dt_opt = anneal->add_option("--dt", ann.dt, "Integrator step")->check(CLI::PositiveNumber);

  QaoaArgs qa;
  auto* qaoa = app.add_subcommand("qaoa", "QAOA optimization or MaxSAT hardness sweep");
  qaoa->add_option("--problem", qa.problem, "Problem file (.json QUBO, .cnf MaxSAT, else edge list)");
  qa.p_opt = qaoa->add_option("--p", qa.p, "Depth")->check(CLI::PositiveNumber);
  qa.starts_opt = qaoa->add_option("--starts", qa.starts)->check(CLI::PositiveNumber);
  qa.budget_opt = qaoa->add_option("--budget", qa.budget, "Total expectation evaluations")->check(CLI::PositiveNumber);
  qaoa->add_option("--strategy", qa.strategy)->check(CLI::IsMember({"grid", "multistart"}));
  qaoa->add_flag("--sweep", qa.sweep, "Run the random 3-SAT hardness sweep");
  qaoa->add_option("--n", qa.n, "Variables for --sweep");
  qaoa->add_option("--ratios", qa.ratios)->delimiter(',');
  qaoa->add_option("--p-list", qa.p_list)->delimiter(',');
  qaoa->add_option("--instances", qa.instances)->check(CLI::PositiveNumber);

  DqcArgs dq;
  auto* dqc = app.add_subcommand("dqc", "Train a differentiable quantum circuit on an ODE");
  dqc->add_option("--ode", dq.ode)->check(CLI::IsMember({"decay"}));
  dq.qubits_opt = dqc->add_option("--qubits", dq.qubits)->check(CLI::Range(1, 12));
  dqc->add_option("--map", dq.map)->check(CLI::IsMember({"fourier", "chebyshev", "tower"}));
  dq.layers_opt = dqc->add_option("--layers", dq.layers)->check(CLI::NonNegativeNumber);
  dq.iters_opt = dqc->add_option("--iters", dq.iters)->check(CLI::PositiveNumber);
  dq.lr_opt = dqc->add_option("--lr", dq.lr)->check(CLI::NonNegativeNumber);
  dqc->add_option("--momentum", dq.momentum)->check(CLI::Range(0.0, 0.999999));
  dqc->add_option("--points", dq.points, "Collocation points")->check(CLI::Range(2, 1000));

  PaintshopArgs ps;
  auto* paintshop = app.add_subcommand("paintshop", "Binary paint shop: exact optimum vs greedy");
  paintshop->add_option("--sequence", ps.sequence, "Explicit car sequence, e.g. 1,2,1,2")->delimiter(',');
  ps.cars_opt = paintshop->add_option("--cars", ps.cars)->check(CLI::Range(1, 20));
  ps.inst_opt = paintshop->add_option("--instances", ps.instances)->check(CLI::PositiveNumber);

  auto* campaign = app.add_subcommand("campaign", "Run a campaign described by --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    g.load();
    if (*satscan) run_satscan(g, sat);
    if (*anneal) run_anneal(g, ann);
    if (*qaoa) run_qaoa(g, qa);
    if (*dqc) run_dqc(g, dq);
    if (*paintshop) run_paintshop(g, ps);
    if (*campaign) run_campaign_cmd(g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nisq::DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

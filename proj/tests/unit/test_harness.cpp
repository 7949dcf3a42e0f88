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
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nisq/error.hpp"
#include "nisq/harness.hpp"
#include "nisq/random.hpp"
#include "nisq/report.hpp"

using namespace nisq;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("nisq_harness_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig paint_config(int workers) {
  ExperimentConfig c;
  c.experiment = "paintshop";
  c.grid["cars"] = {3, 6};
  c.instances = 3;
  c.seed = 21;
  c.workers = workers;
  return c;
}

}  // namespace

TEST(Config, ParseFullSchema) {
  const auto c = parse_config(R"({"experiment": "anneal", "grid": {"g": [1, 2], "protocol": [1, 2, 3]},
      "params": {"n": 4}, "instances": 5, "seed": 9, "workers": 2, "output": "x.csv"})");
  EXPECT_EQ(c.experiment, "anneal");
  EXPECT_EQ(c.n_cells(), 6u);
  EXPECT_EQ(c.params.at("n"), 4.0);
  EXPECT_EQ(c.instances, 5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.workers, 2);
  EXPECT_EQ(c.output, "x.csv");
  // Last key ("protocol") varies fastest.
  EXPECT_EQ(c.cell(0), (std::map<std::string, double>{{"g", 1}, {"protocol", 1}}));
  EXPECT_EQ(c.cell(1), (std::map<std::string, double>{{"g", 1}, {"protocol", 2}}));
  EXPECT_EQ(c.cell(3), (std::map<std::string, double>{{"g", 2}, {"protocol", 1}}));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("{"), ParseError);
  EXPECT_THROW(parse_config(R"({"grid": {"a": [1]}})"), ParseError);
  EXPECT_THROW(parse_config(R"({"experiment": "x", "grid": {"a": [1]}, "bogus": 1})"), ParseError);
  EXPECT_THROW(parse_config(R"({"experiment": "x", "grid": {"a": "no"}})"), ParseError);
  EXPECT_THROW(parse_config(R"({"experiment": "x", "grid": {"a": []}})").validate(), DomainError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Workers, Precedence) {
  ::setenv("NISQ_WORKERS", "3", 1);
  EXPECT_EQ(resolve_workers(std::nullopt), 3);
  EXPECT_EQ(resolve_workers(5), 5);
  ::setenv("NISQ_WORKERS", "junk", 1);
  EXPECT_GE(resolve_workers(std::nullopt), 1);
  ::unsetenv("NISQ_WORKERS");
}

TEST(Campaign, SeedsAndOrdering) {
  const auto records = run_campaign(paint_config(1));
  ASSERT_EQ(records.size(), 6u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    EXPECT_EQ(r.cell_index, i / 3);
    EXPECT_EQ(r.instance, static_cast<int>(i % 3));
    EXPECT_EQ(r.seed, derive_seed(21, r.cell_index, r.instance));
    EXPECT_EQ(r.problem_seed, derive_seed(21, kSharedCell, r.instance));
    EXPECT_EQ(r.version, version());
    EXPECT_LE(r.metrics.at("optimum"), r.metrics.at("greedy"));
  }
  EXPECT_EQ(records[0].problem_seed, records[3].problem_seed);
}

TEST(Campaign, ParallelEqualsSerial) {
  auto serial = run_campaign(paint_config(1));
  auto parallel = run_campaign(paint_config(4));
  for (auto* v : {&serial, &parallel}) {
    for (auto& r : *v) r.wall_ms = 0.0;
  }
  EXPECT_EQ(serial, parallel);
}

TEST(Campaign, CustomExperimentAndFailures) {
  register_experiment("echo", [](const RunContext& ctx) {
    return std::map<std::string, double>{{"value", ctx.get("a", -1) * 10 + ctx.get("b", 7)}};
  });
  ExperimentConfig c;
  c.experiment = "echo";
  c.grid["a"] = {1, 2};
  c.params["b"] = 3;
  const auto records = run_campaign(c);
  EXPECT_EQ(records[1].metrics.at("value"), 23.0);

  register_experiment("boom", [](const RunContext&) -> std::map<std::string, double> { throw DomainError("boom"); });
  c.experiment = "boom";
  EXPECT_THROW(run_campaign(c), DomainError);
  c.experiment = "missing";
  EXPECT_THROW(run_campaign(c), DomainError);
}

TEST(Report, CsvIsByteIdenticalAcrossRuns) {
  const auto dir = temp_dir();
  const auto a = run_campaign(paint_config(2));
  const auto b = run_campaign(paint_config(1));
  emit_report(a, dir / "a.csv", ReportFormat::Csv);
  emit_report(b, dir / "b.csv", ReportFormat::Csv);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  const auto text = slurp(dir / "a.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "experiment,cell_index,instance,seed,problem_seed,cars,greedy,greedy_excess,optimum,version");
  std::filesystem::remove_all(dir);
}

TEST(Report, JsonRoundTripIsExact) {
  auto records = run_campaign(paint_config(1));
  records[0].metrics["awkward"] = 0.1 + 0.2;
  records[1].wall_ms = 1.0 / 3.0;
  std::stringstream ss;
  write_json(ss, records);
  EXPECT_EQ(read_json(ss), records);
  std::istringstream bad(R"({"schema_version": 1, "records": [{"experiment": 3}]})");
  EXPECT_THROW(read_json(bad), ParseError);
}

TEST(Report, EmitErrors) {
  EXPECT_THROW(emit_report({}, "x.csv", ReportFormat::Csv), DomainError);
  const auto records = run_campaign(paint_config(1));
  EXPECT_THROW(emit_report(records, "/nonexistent/dir/x.csv", ReportFormat::Csv), IoError);
}

TEST(Report, CsvTableFormatting) {
  CsvTable t({"name", "value"});
  t.row().add(std::string("a,b")).add(0.1);
  t.row().add(std::string("plain")).add(static_cast<long long>(-3));
  std::ostringstream out;
  t.write(out);
  EXPECT_EQ(out.str(), "name,value\n\"a,b\",0.1\nplain,-3\n");
  EXPECT_EQ(format_csv_double(1.0 / 3.0), "0.333333333333");
}

TEST(SatPhase, CrossingAndPeak) {
  std::vector<SatPhaseRow> rows{
      {3.0, 20, 10, 1.0, 1, 1}, {4.0, 20, 10, 0.7, 5, 5}, {5.0, 20, 10, 0.3, 9, 9}, {6.0, 20, 10, 0.0, 4, 4}};
  EXPECT_NEAR(*sat_crossing_ratio(rows), 4.5, 1e-12);
  EXPECT_EQ(sat_peak_ratio(rows), 5.0);
  rows[2].p_sat = 0.6;
  rows[3].p_sat = 0.6;
  EXPECT_FALSE(sat_crossing_ratio(rows).has_value());
  EXPECT_THROW(sat_peak_ratio({}), DomainError);
}

TEST(SatPhase, SmallScanIsDeterministic) {
  const auto a = sat_phase_experiment(8, {2.0, 6.0}, 20, 3, 1);
  const auto b = sat_phase_experiment(8, {2.0, 6.0}, 20, 3, 2);
  ASSERT_EQ(a.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a[i].p_sat, b[i].p_sat);
    EXPECT_EQ(a[i].median_backtracks, b[i].median_backtracks);
  }
  EXPECT_GT(a[0].p_sat, a[1].p_sat);
  EXPECT_THROW(sat_phase_experiment(2, {1.0}, 1, 0), SizeError);
}

#ifdef NISQ_CLI_PATH
namespace {
int run_cli(const std::string& args) {
  const int status = std::system((std::string(NISQ_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}
}  // namespace

TEST(Cli, ExitCodesAndReproducibleOutput) {
  const auto dir = temp_dir();
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("qaoa --problem /nonexistent.txt"), 2);
  EXPECT_EQ(run_cli("--config /nonexistent.json campaign"), 2);
  {
    std::ofstream(dir / "bad.json") << R"({"experiment": "paintshop", "grid": {"cars": [3]}, "oops": 1})";
  }
  EXPECT_EQ(run_cli("campaign --config " + (dir / "bad.json").string()), 2);
  {
    std::ofstream(dir / "c.json") << R"({"experiment": "paintshop", "grid": {"cars": [3, 4]}, "instances": 2})";
  }
  const auto cfg = (dir / "c.json").string();
  EXPECT_EQ(run_cli("campaign --config " + cfg + " --seed 4 --workers 1 --out " + (dir / "a.csv").string()), 0);
  EXPECT_EQ(run_cli("campaign --config " + cfg + " --seed 4 --workers 3 --out " + (dir / "b.csv").string()), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(run_cli("qaoa --sweep --n 12 --instances 1"), 3);
  std::filesystem::remove_all(dir);
}
#endif

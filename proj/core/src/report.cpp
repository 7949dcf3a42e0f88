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

#include "nisq/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "nisq/error.hpp"

namespace nisq {

namespace {

std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_joined(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape_csv(fields[i]);
  }
  out << '\n';
}

}  // namespace

std::string format_csv_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records, const CsvOptions& options) {
  std::set<std::string> axes;
  std::set<std::string> metrics;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.cell) axes.insert(k);
    for (const auto& [k, v] : r.metrics) metrics.insert(k);
  }
  std::vector<std::string> header{"experiment", "cell_index", "instance", "seed", "problem_seed"};
  header.insert(header.end(), axes.begin(), axes.end());
  header.insert(header.end(), metrics.begin(), metrics.end());
  header.emplace_back("version");
  if (options.include_wall_time) header.emplace_back("wall_ms");
  write_joined(out, header);

  for (const auto& r : records) {
    std::vector<std::string> fields{r.experiment, std::to_string(r.cell_index), std::to_string(r.instance),
                                    std::to_string(r.seed), std::to_string(r.problem_seed)};
    for (const auto& a : axes) {
      auto it = r.cell.find(a);
      fields.push_back(it == r.cell.end() ? "" : format_csv_double(it->second));
    }
    for (const auto& m : metrics) {
      auto it = r.metrics.find(m);
      fields.push_back(it == r.metrics.end() ? "" : format_csv_double(it->second));
    }
    fields.push_back(r.version);
    if (options.include_wall_time) fields.push_back(format_csv_double(r.wall_ms));
    write_joined(out, fields);
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    doc["records"].push_back({{"experiment", r.experiment},
                              {"cell_index", r.cell_index},
                              {"cell", r.cell},
                              {"instance", r.instance},
                              {"seed", r.seed},
                              {"problem_seed", r.problem_seed},
                              {"metrics", r.metrics},
                              {"wall_ms", r.wall_ms},
                              {"version", r.version}});
  }
  out << doc.dump(2) << '\n';
}

std::vector<RunRecord> read_json(std::istream& in) {
  try {
    const auto doc = nlohmann::json::parse(in);
    const int schema = doc.at("schema_version").get<int>();
    if (schema != kReportSchemaVersion) {
      throw ParseError("unsupported report schema version " + std::to_string(schema));
    }
    std::vector<RunRecord> records;
    for (const auto& j : doc.at("records")) {
      RunRecord r;
      r.experiment = j.at("experiment").get<std::string>();
      r.cell_index = j.at("cell_index").get<std::size_t>();
      r.cell = j.at("cell").get<std::map<std::string, double>>();
      r.instance = j.at("instance").get<int>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.problem_seed = j.at("problem_seed").get<std::uint64_t>();
      r.metrics = j.at("metrics").get<std::map<std::string, double>>();
      r.wall_ms = j.at("wall_ms").get<double>();
      r.version = j.at("version").get<std::string>();
      records.push_back(std::move(r));
    }
    return records;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& path, ReportFormat format,
                 const CsvOptions& options) {
  if (records.empty()) throw DomainError("no records to report");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == ReportFormat::Csv) {
    write_csv(out, records, options);
  } else {
    write_json(out, records);
  }
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(format_csv_double(value)); }

CsvTable& CsvTable::add(long long value) { return add(std::to_string(value)); }

CsvTable& CsvTable::add(std::uint64_t value) { return add(std::to_string(value)); }

CsvTable& CsvTable::add(const std::string& value) {
  if (rows_.empty()) rows_.emplace_back();
  rows_.back().push_back(value);
  return *this;
}

void CsvTable::write(std::ostream& out) const {
  write_joined(out, header_);
  for (const auto& r : rows_) write_joined(out, r);
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace nisq

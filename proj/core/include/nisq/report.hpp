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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nisq/harness.hpp"

namespace nisq {

inline constexpr int kReportSchemaVersion = 1;

/// %.12g, the precision used for every CSV float.
std::string format_csv_double(double value);

enum class ReportFormat { Csv, Json };

struct CsvOptions {
  /// Wall time varies run to run; leaving it out keeps reruns byte-identical.
  bool include_wall_time = false;
};

/// Columns: experiment, cell_index, instance, seed, problem_seed, one
/// column per cell axis, one per metric (union over records, sorted),
/// version, then wall_ms if requested. Metrics a record lacks are empty.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records, const CsvOptions& options = {});

/// {"schema_version": 1, "records": [...]}; doubles are written with
/// round-trip precision so read_json restores equal records.
void write_json(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_json(std::istream& in);

/// Writes to `path`. Throws DomainError for empty records and IoError
/// naming the path when the file cannot be written.
void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& path, ReportFormat format,
                 const CsvOptions& options = {});

/// Minimal CSV table writer for the fixed-layout products.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& add(double value);
  CsvTable& add(long long value);
  CsvTable& add(int value) { return add(static_cast<long long>(value)); }
  CsvTable& add(std::uint64_t value);
  CsvTable& add(const std::string& value);
  void write(std::ostream& out) const;
  /// Throws IoError naming the path on failure.
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace nisq

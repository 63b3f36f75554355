// Copyright 2026 The fepim Authors
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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fepim/workloads.hpp"

namespace fepim {

/// Rounds to `digits` significant decimal digits. Every real number in a
/// report goes through this so files are byte-identical across runs.
double round_sig(double value, int digits = 6);

/// Text used for a real number in both JSON and CSV output.
std::string format_number(double value);

std::string format_digest(std::uint64_t digest);

/// Report schema: name, backend, size_bytes, seed, records, instances,
/// oracle_match, energy_J, compute_energy_J, refresh_energy_J, cycles
/// (commands plus refresh), command_cycles, refresh_cycles, exec_time_s,
/// command_counts, output_digest, endurance_warnings.
nlohmann::ordered_json report_to_json(const WorkloadReport& report);

std::string csv_header();
std::string csv_row(const WorkloadReport& report);

/// The fields a comparison needs, from a live report or a report file.
struct ReportSummary {
  std::string name;
  Backend backend = Backend::kFeram;
  double energy_j = 0.0;
  double cycles = 0.0;
  bool oracle_match = false;
};

ReportSummary summarize(const WorkloadReport& report);
/// Throws kConfigError when a required field is missing.
ReportSummary summary_from_json(const nlohmann::json& doc);

struct ComparisonRow {
  std::string name;
  double energy_ratio = 0.0;  // E_dram / E_feram
  double speedup = 0.0;       // cycles_dram / cycles_feram
};

struct ComparisonSummary {
  std::vector<ComparisonRow> rows;  // sorted by workload name
  double geomean_energy_ratio = 0.0;
  double geomean_speedup = 0.0;
  double mean_energy_ratio = 0.0;
  double mean_speedup = 0.0;
};

/// Pairs reports by workload name. Throws kMissingPair if a workload has
/// only one backend, or if there is nothing to compare.
ComparisonSummary compare(const std::vector<ReportSummary>& reports);

nlohmann::ordered_json summary_to_json(const ComparisonSummary& summary);
std::string render_table(const ComparisonSummary& summary);

/// Loads every report file (*.json with a "backend" field) in `dir`.
std::vector<ReportSummary> load_reports(const std::string& dir);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fepim

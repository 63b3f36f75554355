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

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fepim/workloads.hpp"

namespace fepim {

/// A simulation campaign. Loaded from a single JSON document:
///
///   {
///     "cost_params": {"e_activate_dram": 22.6, ...},
///     "geometry":    {"row_width": 65536, "n_caps": 3, "total_rows": 1048576},
///     "cell":        {"disturb_budget": 100, "endurance_limit": 1000000,
///                     "endurance_policy": "abort"},
///     "workloads":   ["crc8", {"name": "bnn_inference", "size_bytes": 4194304,
///                              "seed": 7, "params": {"bnn_neurons": 8}}],
///     "backends":    ["feram", "dram"],
///     "output":      {"dir": "reports", "csv": "reports.csv"}
///   }
///
/// Every section is optional; omitted workloads mean all eight at 16 MB.
struct RunConfig {
  RunSettings settings;
  std::vector<WorkloadSpec> workloads;
  std::vector<Backend> backends = {Backend::kFeram, Backend::kDram};
  std::string output_dir = "reports";
  std::string csv_name = "reports.csv";
};

RunConfig default_config();

/// Throws SimError(kConfigError) naming the offending key and its line.
RunConfig parse_config(std::string_view text, std::string_view source = "config");
RunConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace fepim

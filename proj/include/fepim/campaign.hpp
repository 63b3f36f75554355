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
#include <vector>

#include "fepim/config.hpp"
#include "fepim/report.hpp"

namespace fepim {

/// Runs every (workload, backend) pair of `config`, workload-major. Runs are
/// independent; `jobs` > 1 executes them on worker threads without changing
/// any result or the returned order.
std::vector<WorkloadReport> run_campaign(const RunConfig& config, unsigned jobs = 1);

std::string report_file_name(const WorkloadReport& report);

/// Writes one JSON file per report plus the CSV table into `dir`.
void write_campaign(const RunConfig& config, const std::vector<WorkloadReport>& reports,
                    const std::string& dir);

}  // namespace fepim

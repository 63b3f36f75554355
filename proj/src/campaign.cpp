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

#include "fepim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <thread>

namespace fepim {

std::vector<WorkloadReport> run_campaign(const RunConfig& config, unsigned jobs) {
  struct Task {
    const WorkloadSpec* spec;
    Backend backend;
  };
  std::vector<Task> tasks;
  for (const auto& w : config.workloads) {
    for (auto b : config.backends) tasks.push_back({&w, b});
  }
  std::vector<WorkloadReport> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = run(*tasks[i].spec, tasks[i].backend, config.settings);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string report_file_name(const WorkloadReport& report) {
  return report.name + "." + std::string(to_string(report.backend)) + ".json";
}

void write_campaign(const RunConfig& config, const std::vector<WorkloadReport>& reports,
                    const std::string& dir) {
  namespace fs = std::filesystem;
  std::string csv = csv_header() + "\n";
  for (const auto& r : reports) {
    write_file_atomic((fs::path(dir) / report_file_name(r)).string(),
                      report_to_json(r).dump(2) + "\n");
    csv += csv_row(r) + "\n";
  }
  write_file_atomic((fs::path(dir) / config.csv_name).string(), csv);
}

}  // namespace fepim

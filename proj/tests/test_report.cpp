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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fepim/campaign.hpp"
#include "helpers.hpp"

using namespace fepim;
using testing::error_of;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fepim_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

RunConfig small_config() {
  RunConfig c = default_config();
  c.settings.geometry.row_width = 2048;
  for (auto& w : c.workloads) w.size_bytes = 2048 * record_rows(w) / 8;
  return c;
}

}  // namespace

TEST_CASE("round_sig and number formatting") {
  CHECK(round_sig(1.23456789) == 1.23457);
  CHECK(round_sig(0.0) == 0.0);
  CHECK(round_sig(123456789.0) == 123457000.0);
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_digest(0xabc) == "0x0000000000000abc");
}

TEST_CASE("config: unknown key reported with its line") {
  const std::string text = "{\n  \"geometry\": {\n    \"row_width\": 8192,\n    \"rows\": 4\n  }\n}\n";
  try {
    parse_config(text, "run.json");
    FAIL("expected a config error");
  } catch (const SimError& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    const std::string msg = e.what();
    CHECK(msg.find("run.json:4:") != std::string::npos);
    CHECK(msg.find("rows") != std::string::npos);
  }
}

TEST_CASE("config: syntax errors, bad values, and duplicates") {
  CHECK(error_of([] { parse_config("{\n \"cell\": {\n"); }) == ErrorCode::kConfigError);
  CHECK(error_of([] { parse_config(R"({"cost_params": {"cycle_time_ns": 0}})"); }) ==
        ErrorCode::kConfigError);
  CHECK(error_of([] { parse_config(R"({"workloads": ["crc8", "crc8"]})"); }) ==
        ErrorCode::kConfigError);
  CHECK(error_of([] { parse_config(R"({"workloads": ["md5"]})"); }) == ErrorCode::kConfigError);
  CHECK(error_of([] {
          parse_config(R"({"workloads": [{"name": "crc8", "params": {"bnn_inputs": 4}}]})");
        }) == ErrorCode::kConfigError);
  CHECK(error_of([] { parse_config(R"({"backends": ["sram"]})"); }) == ErrorCode::kConfigError);
}

TEST_CASE("config: defaults and round trip") {
  const auto c = parse_config("{}");
  CHECK(c.workloads.size() == 8);
  CHECK(c.backends.size() == 2);
  CHECK(c.workloads[0].size_bytes == 16u << 20);
  CHECK(c.settings.cost.e_activate_dram == 22.6);

  const auto parsed = parse_config(R"({
    "cost_params": {"e_copy": 0.5, "e_write_row": 10},
    "cell": {"endurance_policy": "warn"},
    "workloads": ["xor_cipher", {"name": "bitmap_query", "size_bytes": 65536, "seed": 9,
                                 "params": {"predicate": "b1 & !b2"}}],
    "backends": ["dram"]
  })");
  CHECK(parsed.settings.cost.e_copy == 0.5);
  CHECK(parsed.settings.cost.e_write_row == 10.0);
  CHECK(parsed.settings.cell.endurance_policy == EndurancePolicy::kWarn);
  REQUIRE(parsed.workloads.size() == 2);
  CHECK(parsed.workloads[1].seed == 9);
  CHECK(parsed.workloads[1].params.predicate == "b1 & !b2");
  CHECK(parsed.backends == std::vector<Backend>{Backend::kDram});

  const auto again = parse_config(to_json(parsed).dump());
  CHECK(to_json(again) == to_json(parsed));
}

TEST_CASE("campaign writes consistent JSON and CSV") {
  const auto config = small_config();
  const auto reports = run_campaign(config, 4);
  REQUIRE(reports.size() == 16);
  for (const auto& r : reports) CHECK(r.oracle_match);

  const auto dir = temp_dir("campaign");
  write_campaign(config, reports, dir.string());

  std::istringstream csv(read_file(dir / "reports.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == csv_header());
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    const auto& r = reports[rows++];
    const auto doc = nlohmann::json::parse(read_file(dir / report_file_name(r)));
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    CHECK(fields[0] == doc["name"]);
    CHECK(fields[1] == doc["backend"]);
    CHECK(fields[5] == doc["energy_J"].dump());
    CHECK(fields[8] == doc["cycles"].dump());
    CHECK(fields[11] == doc["exec_time_s"].dump());
    CHECK(fields[12] == doc["output_digest"]);
    CHECK(doc["oracle_match"] == true);
    CHECK(doc["energy_J"].get<double>() ==
          doctest::Approx(doc["compute_energy_J"].get<double>() +
                          doc["refresh_energy_J"].get<double>())
              .epsilon(1e-5));
  }
  CHECK(rows == 16);

  const auto summary = compare(load_reports(dir.string()));
  CHECK(summary.rows.size() == 8);
  for (const auto& row : summary.rows) {
    CHECK(row.energy_ratio > 1.0);
    CHECK(row.speedup > 1.0);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel and serial campaigns agree") {
  auto config = small_config();
  config.workloads.resize(3);
  const auto serial = run_campaign(config, 1);
  const auto parallel = run_campaign(config, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(report_to_json(serial[i]).dump() == report_to_json(parallel[i]).dump());
  }
}

TEST_CASE("compare") {
  std::vector<ReportSummary> same = {{"a", Backend::kFeram, 2.0, 10.0, true},
                                     {"a", Backend::kDram, 2.0, 10.0, true}};
  const auto s = compare(same);
  CHECK(s.geomean_energy_ratio == 1.0);
  CHECK(s.geomean_speedup == 1.0);

  std::vector<ReportSummary> two = {{"a", Backend::kFeram, 1.0, 1.0, true},
                                    {"a", Backend::kDram, 2.0, 4.0, true},
                                    {"b", Backend::kDram, 8.0, 1.0, true},
                                    {"b", Backend::kFeram, 1.0, 1.0, true}};
  const auto t = compare(two);
  CHECK(t.geomean_energy_ratio == doctest::Approx(4.0));
  CHECK(t.geomean_speedup == doctest::Approx(2.0));
  CHECK(t.mean_energy_ratio == doctest::Approx(5.0));
  CHECK(t.rows[0].name == "a");

  two.pop_back();
  CHECK(error_of([&] { compare(two); }) == ErrorCode::kMissingPair);
  CHECK(error_of([] { compare({}); }) == ErrorCode::kMissingPair);
}

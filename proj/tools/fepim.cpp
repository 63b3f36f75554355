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

// fepim: run bulk-bitwise workloads on the FeRAM and DRAM models and compare
// their cost.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fepim/campaign.hpp"
#include "fepim/cell.hpp"
#include "fepim/lowering.hpp"

namespace {

using namespace fepim;

constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

std::string resolve_output_dir(const std::string& flag, const RunConfig& config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FEPIM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return config.output_dir;
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            std::uint64_t size_override, unsigned jobs) {
  RunConfig config = config_path.empty() ? default_config() : load_config(config_path);
  if (size_override != 0) {
    for (auto& w : config.workloads) w.size_bytes = size_override;
  }
  const std::string dir = resolve_output_dir(out_flag, config);
  const auto reports = run_campaign(config, jobs);
  write_campaign(config, reports, dir);

  bool all_match = true;
  for (const auto& r : reports) {
    std::printf("%-17s %-5s %-8s energy %s J  cycles %s\n", r.name.c_str(),
                std::string(to_string(r.backend)).c_str(), r.oracle_match ? "ok" : "MISMATCH",
                format_number(r.ledger.total_energy_j).c_str(),
                format_number(static_cast<double>(r.ledger.total_cycles) + r.ledger.refresh_cycles)
                    .c_str());
    all_match = all_match && r.oracle_match;
  }
  std::printf("%zu reports written to %s\n", reports.size(), dir.c_str());
  return all_match ? 0 : kExitMismatch;
}

int cmd_compare(const std::string& dir, const std::string& out_path) {
  const auto summary = compare(load_reports(dir));
  std::cout << render_table(summary);
  std::cout << "(aggregate: geometric mean over " << summary.rows.size() << " workloads)\n";
  const std::string path =
      out_path.empty() ? (std::filesystem::path(dir) / "comparison.json").string() : out_path;
  write_file_atomic(path, summary_to_json(summary).dump(2) + "\n");
  return 0;
}

int cmd_truth_table() {
  std::printf("A B C | MIN MAJ\n");
  for (int v = 0; v < 8; ++v) {
    const bool a = v & 4, b = v & 2, c = v & 1;
    FeCell cell;
    write_cap(cell, 0, a);
    write_cap(cell, 1, b);
    write_cap(cell, 2, c);
    const bool min = tba_sense(cell, {0, 1, 2});
    DramCellState x{a, true}, y{b, true}, z{c, true};
    const bool maj = dram_tra(x, y, z);
    std::printf("%d %d %d |  %d   %d    %d%d%d -> %d\n", a, b, c, min, maj, a, b, c, min);
  }
  std::printf("\ncontrol C=0 gives NAND, C=1 gives NOR:\n");
  std::printf("A B | MIN(A,B,0) MIN(A,B,1)\n");
  for (int v = 0; v < 4; ++v) {
    const bool a = v & 2, b = v & 1;
    bool out[2];
    for (int c = 0; c < 2; ++c) {
      FeCell cell;
      write_cap(cell, 0, a);
      write_cap(cell, 1, b);
      write_cap(cell, 2, c);
      out[c] = tba_sense(cell, {0, 1, 2});
    }
    std::printf("%d %d |     %d          %d\n", a, b, out[0], out[1]);
  }
  return 0;
}

int cmd_area(unsigned n_caps, double feature, bool stacked, bool json) {
  AreaModel model;
  model.feature_size_nm = feature;
  const auto r = area_report(model, n_caps, stacked);
  if (json) {
    nlohmann::ordered_json j;
    j["n_caps"] = r.n_caps;
    j["feature_size_nm"] = feature;
    j["stacked"] = r.stacked;
    j["planar_area_nm2"] = round_sig(r.planar_area_nm2);
    j["vertical_area_nm2"] = round_sig(r.vertical_area_nm2);
    j["area_per_cell_nm2"] = round_sig(r.area_per_cell_nm2);
    j["density_ratio"] = round_sig(r.density_ratio);
    j["area_with_periphery_nm2"] = round_sig(r.area_with_periphery_nm2);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("n_caps                  %u\n", r.n_caps);
  std::printf("feature size            %g nm\n", feature);
  std::printf("planar area             %.0f nm^2 (%.0f F^2)\n", r.planar_area_nm2,
              r.planar_area_nm2 / (feature * feature));
  std::printf("vertical footprint      %.0f nm^2\n", r.vertical_area_nm2);
  std::printf("density ratio           %.3f\n", r.density_ratio);
  std::printf("area per cell (%s) %.0f nm^2, %.0f nm^2 with periphery\n",
              stacked ? "stacked" : "planar ", r.area_per_cell_nm2, r.area_with_periphery_nm2);
  return 0;
}

int cmd_trace(const std::string& program_path, const std::string& backend_name,
              std::size_t row_width, const std::string& out_path) {
  std::ifstream in(program_path);
  if (!in) throw SimError(ErrorCode::kIoError, "cannot open " + program_path);
  const auto doc = nlohmann::json::parse(in);
  const auto backend = parse_backend(backend_name);
  if (!backend) throw SimError(ErrorCode::kConfigError, "unknown backend " + backend_name);
  ArrayGeometry geometry;
  geometry.row_width = row_width;
  const auto plan = lower(program_from_json(doc), geometry, *backend);
  std::vector<Command> all = plan.setup;
  all.insert(all.end(), plan.body.begin(), plan.body.end());
  if (out_path.empty()) {
    write_trace_jsonl(std::cout, all);
  } else {
    std::ostringstream os;
    write_trace_jsonl(os, all);
    write_file_atomic(out_path, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bulk-bitwise logic-in-memory simulator: 2T-nC FeRAM vs DRAM"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t size_override = 0;
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "Run workloads and write JSON/CSV reports");
  run->add_option("--config", config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides FEPIM_OUTPUT_DIR and config)");
  run->add_option("--size", size_override, "Override size_bytes of every workload");
  run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::Range(1u, 256u));

  std::string reports_dir, compare_out;
  auto* cmp = app.add_subcommand("compare", "Energy ratio and speedup from a report directory");
  cmp->add_option("--reports", reports_dir, "Directory written by 'run'")->required();
  cmp->add_option("--out", compare_out, "Summary path (default <reports>/comparison.json)");

  auto* tt = app.add_subcommand("truth-table", "MINORITY/MAJORITY truth tables from the cell models");

  unsigned n_caps = 3;
  double feature = 28.0;
  bool stacked = false, area_json = false;
  auto* area = app.add_subcommand("area", "Planar vs vertical cell area");
  area->add_option("--ncaps", n_caps, "Capacitors per cell")->check(CLI::PositiveNumber);
  area->add_option("--feature", feature, "Feature size F in nm")->check(CLI::PositiveNumber);
  area->add_flag("--stacked", stacked, "Report the vertical (stacked) cell");
  area->add_flag("--json", area_json, "Print JSON");

  std::string program_path, backend_name = "feram", trace_out;
  std::size_t row_width = 65536;
  auto* trace = app.add_subcommand("trace", "Lower a BitProgram and print its command trace");
  trace->add_option("--program", program_path, "BitProgram JSON")->required();
  trace->add_option("--backend", backend_name, "feram or dram");
  trace->add_option("--row-width", row_width, "Row width in bits");
  trace->add_option("--out", trace_out, "Write JSON lines here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, size_override, jobs);
    if (*cmp) return cmd_compare(reports_dir, compare_out);
    if (*tt) return cmd_truth_table();
    if (*area) return cmd_area(n_caps, feature, stacked, area_json);
    if (*trace) return cmd_trace(program_path, backend_name, row_width, trace_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fepim: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}

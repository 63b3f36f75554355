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

#include "fepim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fepim {

double round_sig(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  return std::strtod(buf, nullptr);
}

std::string format_number(double value) { return nlohmann::json(round_sig(value)).dump(); }

std::string format_digest(std::uint64_t digest) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

namespace {

double total_cycles(const EnergyLedger& l) {
  return static_cast<double>(l.total_cycles) + l.refresh_cycles;
}

std::vector<CommandKind> kinds_of(Backend b) {
  std::vector<CommandKind> out;
  for (auto k : kAllCommandKinds) {
    if (backend_of(k) == b) out.push_back(k);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json report_to_json(const WorkloadReport& r) {
  const auto& l = r.ledger;
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["backend"] = to_string(r.backend);
  j["size_bytes"] = r.size_bytes;
  j["seed"] = r.seed;
  j["records"] = r.records;
  j["instances"] = r.instances;
  j["oracle_match"] = r.oracle_match;
  j["energy_J"] = round_sig(l.total_energy_j);
  j["compute_energy_J"] = round_sig(l.compute_energy_j);
  j["refresh_energy_J"] = round_sig(l.refresh_energy_j);
  j["cycles"] = round_sig(total_cycles(l));
  j["command_cycles"] = l.total_cycles;
  j["refresh_cycles"] = round_sig(l.refresh_cycles);
  j["exec_time_s"] = round_sig(l.exec_time_s);
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (auto k : kinds_of(r.backend)) counts[std::string(to_string(k))] = l.count(k);
  j["command_counts"] = std::move(counts);
  j["output_digest"] = format_digest(r.output_digest);
  j["endurance_warnings"] = r.endurance_warnings;
  return j;
}

std::string csv_header() {
  std::string h =
      "name,backend,size_bytes,seed,oracle_match,energy_J,compute_energy_J,refresh_energy_J,"
      "cycles,command_cycles,refresh_cycles,exec_time_s,output_digest";
  for (auto k : kAllCommandKinds) h += "," + std::string(to_string(k));
  return h;
}

std::string csv_row(const WorkloadReport& r) {
  const auto& l = r.ledger;
  std::ostringstream os;
  os << r.name << ',' << to_string(r.backend) << ',' << r.size_bytes << ',' << r.seed << ','
     << (r.oracle_match ? "true" : "false") << ',' << format_number(l.total_energy_j) << ','
     << format_number(l.compute_energy_j) << ',' << format_number(l.refresh_energy_j) << ','
     << format_number(total_cycles(l)) << ',' << l.total_cycles << ','
     << format_number(l.refresh_cycles) << ',' << format_number(l.exec_time_s) << ','
     << format_digest(r.output_digest);
  for (auto k : kAllCommandKinds) os << ',' << l.count(k);
  return os.str();
}

ReportSummary summarize(const WorkloadReport& r) {
  return {r.name, r.backend, r.ledger.total_energy_j, total_cycles(r.ledger), r.oracle_match};
}

ReportSummary summary_from_json(const nlohmann::json& doc) {
  try {
    ReportSummary s;
    s.name = doc.at("name").get<std::string>();
    const auto b = parse_backend(doc.at("backend").get<std::string>());
    if (!b) throw SimError(ErrorCode::kConfigError, "unknown backend in report " + s.name);
    s.backend = *b;
    s.energy_j = doc.at("energy_J").get<double>();
    s.cycles = doc.at("cycles").get<double>();
    s.oracle_match = doc.at("oracle_match").get<bool>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SimError(ErrorCode::kConfigError, std::string("malformed report: ") + e.what());
  }
}

ComparisonSummary compare(const std::vector<ReportSummary>& reports) {
  std::map<std::string, std::pair<const ReportSummary*, const ReportSummary*>> pairs;
  for (const auto& r : reports) {
    auto& p = pairs[r.name];
    (r.backend == Backend::kFeram ? p.first : p.second) = &r;
  }
  if (pairs.empty()) throw SimError(ErrorCode::kMissingPair, "no reports to compare");
  ComparisonSummary s;
  double log_e = 0.0;
  double log_s = 0.0;
  for (const auto& [name, p] : pairs) {
    if (p.first == nullptr || p.second == nullptr) {
      throw SimError(ErrorCode::kMissingPair,
                     name + " has no " + (p.first == nullptr ? "feram" : "dram") + " report");
    }
    ComparisonRow row{name, p.second->energy_j / p.first->energy_j,
                      p.second->cycles / p.first->cycles};
    log_e += std::log(row.energy_ratio);
    log_s += std::log(row.speedup);
    s.mean_energy_ratio += row.energy_ratio;
    s.mean_speedup += row.speedup;
    s.rows.push_back(std::move(row));
  }
  const double n = static_cast<double>(s.rows.size());
  s.geomean_energy_ratio = std::exp(log_e / n);
  s.geomean_speedup = std::exp(log_s / n);
  s.mean_energy_ratio /= n;
  s.mean_speedup /= n;
  return s;
}

nlohmann::ordered_json summary_to_json(const ComparisonSummary& s) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : s.rows) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["energy_ratio"] = round_sig(r.energy_ratio);
    row["speedup"] = round_sig(r.speedup);
    rows.push_back(std::move(row));
  }
  j["workloads"] = std::move(rows);
  j["aggregate"] = "geomean";
  j["geomean_energy_ratio"] = round_sig(s.geomean_energy_ratio);
  j["geomean_speedup"] = round_sig(s.geomean_speedup);
  j["mean_energy_ratio"] = round_sig(s.mean_energy_ratio);
  j["mean_speedup"] = round_sig(s.mean_speedup);
  return j;
}

std::string render_table(const ComparisonSummary& s) {
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "%-18s %14s %10s\n", "workload", "E_dram/E_feram", "speedup");
  os << line;
  for (const auto& r : s.rows) {
    std::snprintf(line, sizeof line, "%-18s %14.3f %10.3f\n", r.name.c_str(), r.energy_ratio,
                  r.speedup);
    os << line;
  }
  std::snprintf(line, sizeof line, "%-18s %14.3f %10.3f\n", "geomean", s.geomean_energy_ratio,
                s.geomean_speedup);
  os << line;
  std::snprintf(line, sizeof line, "%-18s %14.3f %10.3f\n", "arithmetic mean",
                s.mean_energy_ratio, s.mean_speedup);
  os << line;
  return os.str();
}

std::vector<ReportSummary> load_reports(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw SimError(ErrorCode::kIoError, dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ReportSummary> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    const auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("backend")) continue;
    out.push_back(summary_from_json(doc));
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SimError(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw SimError(ErrorCode::kIoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace fepim

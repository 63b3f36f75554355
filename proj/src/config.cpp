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

#include "fepim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fepim {

RunConfig default_config() {
  RunConfig c;
  for (auto w : kAllWorkloads) {
    WorkloadSpec s;
    s.workload = w;
    c.workloads.push_back(s);
  }
  return c;
}

namespace {

class ConfigReader {
 public:
  ConfigReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SimError(ErrorCode::kConfigError, std::string(source_) + ":" + std::to_string(line) +
                                                ":" + std::to_string(col) + ": " + msg);
  }

  /// Reports against the first place `key` appears as a quoted string.
  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) {
      throw SimError(ErrorCode::kConfigError, std::string(source_) + ": " + msg);
    }
    fail_at(pos, msg);
  }

  void require_object(const nlohmann::json& j, const std::string& key) const {
    if (!j.is_object()) fail_key(key, "'" + key + "' must be an object");
  }

  double number(const nlohmann::json& j, const std::string& key) const {
    if (!j.is_number()) fail_key(key, "'" + key + "' must be a number");
    return j.get<double>();
  }

  std::uint64_t count(const nlohmann::json& j, const std::string& key) const {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
      fail_key(key, "'" + key + "' must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
  }

  std::string string(const nlohmann::json& j, const std::string& key) const {
    if (!j.is_string()) fail_key(key, "'" + key + "' must be a string");
    return j.get<std::string>();
  }

  [[noreturn]] void unknown(const std::string& section, const std::string& key) const {
    fail_key(key, "unknown key '" + key + "'" + (section.empty() ? "" : " in " + section));
  }

  void cost(const nlohmann::json& j, CostParams& p) const {
    require_object(j, "cost_params");
    for (const auto& [k, v] : j.items()) {
      if (k == "e_activate_dram") p.e_activate_dram = number(v, k);
      else if (k == "e_activate_feram") p.e_activate_feram = number(v, k);
      else if (k == "e_precharge") p.e_precharge = number(v, k);
      else if (k == "e_copy") p.e_copy = number(v, k);
      else if (k == "e_write_row") {
        if (v.is_null()) p.e_write_row.reset();
        else p.e_write_row = number(v, k);
      } else if (k == "cycle_time_ns") p.cycle_time_ns = number(v, k);
      else if (k == "cycles_per_command") p.cycles_per_command = static_cast<std::uint32_t>(count(v, k));
      else if (k == "refresh_interval_ms") p.refresh_interval_ms = number(v, k);
      else unknown("cost_params", k);
    }
    try {
      p.validate();
    } catch (const SimError& e) {
      fail_key("cost_params", e.what());
    }
  }

  void geometry(const nlohmann::json& j, ArrayGeometry& g) const {
    require_object(j, "geometry");
    for (const auto& [k, v] : j.items()) {
      if (k == "row_width") g.row_width = count(v, k);
      else if (k == "n_caps") g.n_caps = count(v, k);
      else if (k == "total_rows") g.total_rows = count(v, k);
      else unknown("geometry", k);
    }
    try {
      g.validate();
    } catch (const SimError& e) {
      fail_key("geometry", e.what());
    }
  }

  void cell(const nlohmann::json& j, CellConfig& c) const {
    require_object(j, "cell");
    for (const auto& [k, v] : j.items()) {
      if (k == "disturb_budget") c.disturb_budget = count(v, k);
      else if (k == "endurance_limit") c.endurance_limit = count(v, k);
      else if (k == "endurance_policy") {
        const auto s = string(v, k);
        if (s == "abort") c.endurance_policy = EndurancePolicy::kAbort;
        else if (s == "warn") c.endurance_policy = EndurancePolicy::kWarn;
        else fail_key(k, "endurance_policy must be \"abort\" or \"warn\"");
      } else {
        unknown("cell", k);
      }
    }
    try {
      c.validate();
    } catch (const SimError& e) {
      fail_key("cell", e.what());
    }
  }

  WorkloadSpec workload(const nlohmann::json& j) const {
    WorkloadSpec s;
    const nlohmann::json* params = nullptr;
    std::string name;
    if (j.is_string()) {
      name = j.get<std::string>();
    } else if (j.is_object()) {
      if (!j.contains("name")) fail_key("workloads", "workload entry without 'name'");
      name = string(j.at("name"), "name");
      for (const auto& [k, v] : j.items()) {
        if (k == "name") continue;
        if (k == "size_bytes") s.size_bytes = count(v, k);
        else if (k == "seed") s.seed = count(v, k);
        else if (k == "params") params = &v;
        else unknown("workload " + name, k);
      }
    } else {
      fail_key("workloads", "workload entries must be names or objects");
    }
    const auto w = parse_workload(name);
    if (!w) fail_key(name, "unknown workload '" + name + "'");
    s.workload = *w;
    if (params != nullptr) {
      try {
        s.params = params_from_json(*w, *params);
      } catch (const SimError& e) {
        const std::string msg = e.what();
        const auto q = msg.find('\'');
        const auto q2 = q == std::string::npos ? q : msg.find('\'', q + 1);
        if (q2 != std::string::npos) fail_key(msg.substr(q + 1, q2 - q - 1), msg);
        fail_key("params", msg);
      }
    }
    return s;
  }

  RunConfig parse() const {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text_);
    } catch (const nlohmann::json::parse_error& e) {
      fail_at(e.byte == 0 ? 0 : e.byte - 1, e.what());
    }
    RunConfig c = default_config();
    if (!doc.is_object()) fail_at(0, "config must be a JSON object");
    for (const auto& [k, v] : doc.items()) {
      if (k == "cost_params") {
        cost(v, c.settings.cost);
      } else if (k == "geometry") {
        geometry(v, c.settings.geometry);
      } else if (k == "cell") {
        cell(v, c.settings.cell);
      } else if (k == "workloads") {
        if (!v.is_array()) fail_key(k, "'workloads' must be an array");
        c.workloads.clear();
        for (const auto& w : v) {
          c.workloads.push_back(workload(w));
          const auto name = to_string(c.workloads.back().workload);
          for (std::size_t i = 0; i + 1 < c.workloads.size(); ++i) {
            if (c.workloads[i].workload == c.workloads.back().workload) {
              fail_key(std::string(name), "workload '" + std::string(name) + "' listed twice");
            }
          }
        }
      } else if (k == "backends") {
        if (!v.is_array() || v.empty()) fail_key(k, "'backends' must be a non-empty array");
        c.backends.clear();
        for (const auto& b : v) {
          const auto name = string(b, k);
          const auto backend = parse_backend(name);
          if (!backend) fail_key(name, "unknown backend '" + name + "'");
          if (std::find(c.backends.begin(), c.backends.end(), *backend) == c.backends.end()) {
            c.backends.push_back(*backend);
          }
        }
      } else if (k == "output") {
        require_object(v, k);
        for (const auto& [ok, ov] : v.items()) {
          if (ok == "dir") c.output_dir = string(ov, ok);
          else if (ok == "csv") c.csv_name = string(ov, ok);
          else unknown("output", ok);
        }
      } else {
        unknown("", k);
      }
    }
    c.settings.cell.n_caps = c.settings.geometry.n_caps;
    return c;
  }

 private:
  std::string_view text_;
  std::string_view source_;
};

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source) {
  return ConfigReader(text, source).parse();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  const auto& p = c.settings.cost;
  j["cost_params"] = {{"e_activate_dram", p.e_activate_dram},
                      {"e_activate_feram", p.e_activate_feram},
                      {"e_precharge", p.e_precharge},
                      {"e_copy", p.e_copy},
                      {"e_write_row", p.e_write_row ? nlohmann::ordered_json(*p.e_write_row)
                                                    : nlohmann::ordered_json()},
                      {"cycle_time_ns", p.cycle_time_ns},
                      {"cycles_per_command", p.cycles_per_command},
                      {"refresh_interval_ms", p.refresh_interval_ms}};
  const auto& g = c.settings.geometry;
  j["geometry"] = {{"row_width", g.row_width}, {"n_caps", g.n_caps}, {"total_rows", g.total_rows}};
  const auto& cell = c.settings.cell;
  j["cell"] = {{"disturb_budget", cell.disturb_budget},
               {"endurance_limit", cell.endurance_limit},
               {"endurance_policy",
                cell.endurance_policy == EndurancePolicy::kAbort ? "abort" : "warn"}};
  auto ws = nlohmann::ordered_json::array();
  for (const auto& w : c.workloads) {
    nlohmann::ordered_json e;
    e["name"] = to_string(w.workload);
    e["size_bytes"] = w.size_bytes;
    e["seed"] = w.seed;
    e["params"] = params_to_json(w.workload, w.params);
    ws.push_back(std::move(e));
  }
  j["workloads"] = std::move(ws);
  auto bs = nlohmann::ordered_json::array();
  for (auto b : c.backends) bs.push_back(to_string(b));
  j["backends"] = std::move(bs);
  j["output"] = {{"dir", c.output_dir}, {"csv", c.csv_name}};
  return j;
}

}  // namespace fepim

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

#include "fepim/command.hpp"

#include <nlohmann/json.hpp>

namespace fepim {

std::string_view to_string(Backend backend) {
  return backend == Backend::kFeram ? "feram" : "dram";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "feram") return Backend::kFeram;
  if (name == "dram") return Backend::kDram;
  return std::nullopt;
}

std::string_view to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::kFeWriteRow: return "FE_WRITE_ROW";
    case CommandKind::kFeActivateTba: return "FE_ACTIVATE_TBA";
    case CommandKind::kFeActivateRead: return "FE_ACTIVATE_READ";
    case CommandKind::kFeCopy: return "FE_COPY";
    case CommandKind::kFePrecharge: return "FE_PRECHARGE";
    case CommandKind::kFeWriteBackRow: return "FE_WRITE_BACK_ROW";
    case CommandKind::kDrWriteRow: return "DR_WRITE_ROW";
    case CommandKind::kDrActivate: return "DR_ACTIVATE";
    case CommandKind::kDrActivateTra: return "DR_ACTIVATE_TRA";
    case CommandKind::kDrCopyRowClone: return "DR_COPY_ROWCLONE";
    case CommandKind::kDrPrecharge: return "DR_PRECHARGE";
    case CommandKind::kDrRefreshRow: return "DR_REFRESH_ROW";
    case CommandKind::kDrNotDcc: return "DR_NOT_DCC";
  }
  return "UNKNOWN";
}

std::optional<CommandKind> parse_command_kind(std::string_view name) {
  for (auto kind : kAllCommandKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

Backend backend_of(CommandKind kind) noexcept {
  return static_cast<std::uint8_t>(kind) < static_cast<std::uint8_t>(CommandKind::kDrWriteRow)
             ? Backend::kFeram
             : Backend::kDram;
}

std::string_view to_string(Purpose purpose) {
  switch (purpose) {
    case Purpose::kLoad: return "load";
    case Purpose::kControl: return "control";
    case Purpose::kCompute: return "compute";
    case Purpose::kResultCopy: return "result_copy";
    case Purpose::kOperandCopy: return "operand_copy";
    case Purpose::kPrecharge: return "precharge";
    case Purpose::kWriteBack: return "write_back";
    case Purpose::kRefresh: return "refresh";
  }
  return "unknown";
}

void write_trace_jsonl(std::ostream& out, std::span<const Command> trace) {
  std::uint64_t seq = 0;
  for (const auto& cmd : trace) {
    nlohmann::ordered_json line;
    line["seq"] = seq++;
    line["kind"] = to_string(cmd.kind);
    line["row"] = cmd.row;
    auto caps = nlohmann::json::array();
    for (auto c : cmd.cap_list()) caps.push_back(c);
    line["caps"] = std::move(caps);
    if (cmd.has_dst) {
      nlohmann::ordered_json dst;
      dst["row"] = cmd.dst_row;
      if (cmd.dst_cap != kNoCap) dst["cap"] = cmd.dst_cap;
      line["dst"] = std::move(dst);
    } else {
      line["dst"] = nullptr;
    }
    out << line.dump() << '\n';
  }
}

}  // namespace fepim

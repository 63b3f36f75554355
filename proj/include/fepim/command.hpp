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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace fepim {

enum class Backend { kFeram, kDram };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

/// Row-level primitives. The names returned by to_string() are the stable
/// identifiers used in traces and reports.
enum class CommandKind : std::uint8_t {
  kFeWriteRow,
  kFeActivateTba,
  kFeActivateRead,
  kFeCopy,
  kFePrecharge,
  kFeWriteBackRow,
  kDrWriteRow,
  kDrActivate,
  kDrActivateTra,
  kDrCopyRowClone,
  kDrPrecharge,
  kDrRefreshRow,
  kDrNotDcc,
};

inline constexpr std::size_t kCommandKindCount = 13;

inline constexpr std::array<CommandKind, kCommandKindCount> kAllCommandKinds = {
    CommandKind::kFeWriteRow,    CommandKind::kFeActivateTba,  CommandKind::kFeActivateRead,
    CommandKind::kFeCopy,        CommandKind::kFePrecharge,    CommandKind::kFeWriteBackRow,
    CommandKind::kDrWriteRow,    CommandKind::kDrActivate,     CommandKind::kDrActivateTra,
    CommandKind::kDrCopyRowClone, CommandKind::kDrPrecharge,   CommandKind::kDrRefreshRow,
    CommandKind::kDrNotDcc,
};

std::string_view to_string(CommandKind kind);
std::optional<CommandKind> parse_command_kind(std::string_view name);
Backend backend_of(CommandKind kind) noexcept;

/// Why a command was issued. Used for attribution only; execution depends on
/// `kind` alone.
enum class Purpose : std::uint8_t {
  kLoad,         // host data or constants written into the array
  kControl,      // control-bit materialization
  kCompute,      // activation that produces a logic result
  kResultCopy,   // moving a freshly sensed result to its destination
  kOperandCopy,  // relocating an existing operand so it can be computed on
  kPrecharge,
  kWriteBack,    // restoring a capacitor whose disturb budget ran out
  kRefresh,
};

std::string_view to_string(Purpose purpose);

/// Where a row write takes its data from.
struct DataSource {
  enum class Kind : std::uint8_t { kNone, kInput, kConst0, kConst1 };
  Kind kind = Kind::kNone;
  std::uint32_t input = 0;  // index into the plan's input list when kind == kInput

  static DataSource none() { return {}; }
  static DataSource constant(bool bit) { return {bit ? Kind::kConst1 : Kind::kConst0, 0}; }
  static DataSource from_input(std::uint32_t index) { return {Kind::kInput, index}; }

  friend bool operator==(const DataSource&, const DataSource&) = default;
};

inline constexpr std::int32_t kNoOrigin = -1;
inline constexpr std::int16_t kNoCap = -1;

struct Command {
  CommandKind kind = CommandKind::kFePrecharge;
  std::uint32_t row = 0;
  /// Capacitor operands (FeRAM); unused slots hold kNoCap.
  std::array<std::int16_t, 3> caps = {kNoCap, kNoCap, kNoCap};
  std::uint8_t cap_count = 0;
  bool has_dst = false;
  std::uint32_t dst_row = 0;
  std::int16_t dst_cap = kNoCap;
  Purpose purpose = Purpose::kCompute;
  /// Index of the program op this command was lowered from.
  std::int32_t origin = kNoOrigin;
  DataSource source;

  std::span<const std::int16_t> cap_list() const { return {caps.data(), cap_count}; }

  friend bool operator==(const Command&, const Command&) = default;
};

/// JSON-lines export: {"seq","kind","row","caps","dst"}.
void write_trace_jsonl(std::ostream& out, std::span<const Command> trace);

}  // namespace fepim

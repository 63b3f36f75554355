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
#include <stdexcept>
#include <string>
#include <string_view>

namespace fepim {

enum class ErrorCode {
  kIndexOutOfRange,
  kDuplicateIndex,
  kEnduranceExceeded,
  kDisturbBudgetExhausted,
  kInvalidCellRead,
  kWidthMismatch,
  kInvalidAddress,
  kInvalidSequence,
  kUnknownCommandKind,
  kUndeclaredOperand,
  kReassignment,
  kUseBeforeAssignment,
  kInvalidProgram,
  kCapacityExceeded,
  kUnsupportedGeometry,
  kMissingInput,
  kSizeNotAligned,
  kUnsupportedParams,
  kConfigError,
  kMissingPair,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the simulator carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by row-wide commands; records which column failed first.
class ColumnError : public SimError {
 public:
  ColumnError(ErrorCode code, const std::string& what, std::uint64_t column)
      : SimError(code, what + " (column " + std::to_string(column) + ")"), column_(column) {}

  std::uint64_t column() const noexcept { return column_; }

 private:
  std::uint64_t column_;
};

}  // namespace fepim

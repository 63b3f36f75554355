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

#include "fepim/error.hpp"

namespace fepim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDuplicateIndex: return "DuplicateIndex";
    case ErrorCode::kEnduranceExceeded: return "EnduranceExceeded";
    case ErrorCode::kDisturbBudgetExhausted: return "DisturbBudgetExhausted";
    case ErrorCode::kInvalidCellRead: return "InvalidCellRead";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kInvalidAddress: return "InvalidAddress";
    case ErrorCode::kInvalidSequence: return "InvalidSequence";
    case ErrorCode::kUnknownCommandKind: return "UnknownCommandKind";
    case ErrorCode::kUndeclaredOperand: return "UndeclaredOperand";
    case ErrorCode::kReassignment: return "Reassignment";
    case ErrorCode::kUseBeforeAssignment: return "UseBeforeAssignment";
    case ErrorCode::kInvalidProgram: return "InvalidProgram";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kUnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorCode::kMissingInput: return "MissingInput";
    case ErrorCode::kSizeNotAligned: return "SizeNotAligned";
    case ErrorCode::kUnsupportedParams: return "UnsupportedParams";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kMissingPair: return "MissingPair";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fepim

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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fepim/error.hpp"
#include "fepim/row_vector.hpp"

namespace fepim {

enum class Role { kInput, kOutput, kScratch, kConst0, kConst1 };

/// Backend-neutral bulk-bitwise operations. MAJ is the three-input majority
/// used by bit-serial adders; every other op takes the listed arity.
enum class OpCode { kNot, kAnd, kOr, kNand, kNor, kXor, kXnor, kCopy, kConst, kMaj };

std::string_view to_string(Role role);
std::string_view to_string(OpCode op);
std::optional<Role> parse_role(std::string_view name);
std::optional<OpCode> parse_opcode(std::string_view name);

/// Operand count; CONST takes a single "0"/"1" literal instead of a variable.
std::size_t arity(OpCode op);

struct Decl {
  std::string name;
  Role role = Role::kScratch;
  /// 0 means "same width as everything else".
  std::size_t width = 0;
};

struct Op {
  OpCode op = OpCode::kNot;
  std::vector<std::string> args;
  std::string result;
};

struct BitProgram {
  std::vector<Decl> decls;
  std::vector<Op> ops;

  const Decl* find(std::string_view name) const;
  std::vector<std::string> names_with_role(Role role) const;
  std::vector<std::string> inputs() const { return names_with_role(Role::kInput); }
  std::vector<std::string> outputs() const { return names_with_role(Role::kOutput); }

  /// Number of ops with exactly two variable operands.
  std::size_t two_input_op_count() const;
};

struct Diagnostic {
  ErrorCode code;
  std::string subject;
  std::string message;
};

/// First violation of the program invariants, if any: every operand declared
/// and assigned before use, single assignment, only output/scratch names
/// assigned, every output assigned, uniform declared widths, correct arity.
std::optional<Diagnostic> check(const BitProgram& program);

/// Throws SimError with the diagnostic's code.
void validate(const BitProgram& program);

nlohmann::ordered_json to_json(const BitProgram& program);
BitProgram program_from_json(const nlohmann::json& doc);

using RowMap = std::map<std::string, RowVector, std::less<>>;

/// Direct row-at-a-time evaluation of the program; the reference semantics
/// the lowered plans are checked against.
RowMap interpret(const BitProgram& program, const RowMap& inputs);

/// Convenience for constructing programs with generated scratch names.
class ProgramBuilder {
 public:
  std::string input(std::string name);
  std::string const_row(bool value);

  std::string op(OpCode code, std::vector<std::string> args);
  std::string not_(std::string a) { return op(OpCode::kNot, {std::move(a)}); }
  std::string and_(std::string a, std::string b) { return op(OpCode::kAnd, {std::move(a), std::move(b)}); }
  std::string or_(std::string a, std::string b) { return op(OpCode::kOr, {std::move(a), std::move(b)}); }
  std::string xor_(std::string a, std::string b) { return op(OpCode::kXor, {std::move(a), std::move(b)}); }
  std::string xnor(std::string a, std::string b) { return op(OpCode::kXnor, {std::move(a), std::move(b)}); }
  std::string maj(std::string a, std::string b, std::string c) {
    return op(OpCode::kMaj, {std::move(a), std::move(b), std::move(c)});
  }
  std::string constant(bool value);

  /// Marks `value` as a program output named `name`. The value is renamed
  /// when it is an op result, otherwise a COPY is emitted.
  void output(const std::string& value, const std::string& name);

  BitProgram build() const;

 private:
  std::string fresh();

  BitProgram program_;
  std::size_t next_temp_ = 0;
};

}  // namespace fepim

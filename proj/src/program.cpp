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

#include "fepim/program.hpp"

#include <algorithm>
#include <set>

namespace fepim {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kInput: return "input";
    case Role::kOutput: return "output";
    case Role::kScratch: return "scratch";
    case Role::kConst0: return "const0";
    case Role::kConst1: return "const1";
  }
  return "unknown";
}

std::string_view to_string(OpCode op) {
  switch (op) {
    case OpCode::kNot: return "NOT";
    case OpCode::kAnd: return "AND";
    case OpCode::kOr: return "OR";
    case OpCode::kNand: return "NAND";
    case OpCode::kNor: return "NOR";
    case OpCode::kXor: return "XOR";
    case OpCode::kXnor: return "XNOR";
    case OpCode::kCopy: return "COPY";
    case OpCode::kConst: return "CONST";
    case OpCode::kMaj: return "MAJ";
  }
  return "unknown";
}

std::optional<Role> parse_role(std::string_view name) {
  for (auto r : {Role::kInput, Role::kOutput, Role::kScratch, Role::kConst0, Role::kConst1}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::optional<OpCode> parse_opcode(std::string_view name) {
  for (auto o : {OpCode::kNot, OpCode::kAnd, OpCode::kOr, OpCode::kNand, OpCode::kNor,
                 OpCode::kXor, OpCode::kXnor, OpCode::kCopy, OpCode::kConst, OpCode::kMaj}) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

std::size_t arity(OpCode op) {
  switch (op) {
    case OpCode::kNot:
    case OpCode::kCopy:
    case OpCode::kConst: return 1;
    case OpCode::kMaj: return 3;
    default: return 2;
  }
}

const Decl* BitProgram::find(std::string_view name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<std::string> BitProgram::names_with_role(Role role) const {
  std::vector<std::string> out;
  for (const auto& d : decls) {
    if (d.role == role) out.push_back(d.name);
  }
  return out;
}

std::size_t BitProgram::two_input_op_count() const {
  std::size_t n = 0;
  for (const auto& o : ops) {
    if (o.op != OpCode::kConst && arity(o.op) == 2) ++n;
  }
  return n;
}

std::optional<Diagnostic> check(const BitProgram& program) {
  std::map<std::string, const Decl*, std::less<>> declared;
  std::size_t width = 0;
  for (const auto& d : program.decls) {
    if (d.name.empty()) return Diagnostic{ErrorCode::kInvalidProgram, "", "empty variable name"};
    if (!declared.emplace(d.name, &d).second) {
      return Diagnostic{ErrorCode::kReassignment, d.name, "declared twice"};
    }
    if (d.width != 0) {
      if (width != 0 && d.width != width) {
        return Diagnostic{ErrorCode::kWidthMismatch, d.name,
                          "width " + std::to_string(d.width) + " vs " + std::to_string(width)};
      }
      width = d.width;
    }
  }

  std::set<std::string, std::less<>> assigned;
  for (const auto& d : program.decls) {
    if (d.role == Role::kInput || d.role == Role::kConst0 || d.role == Role::kConst1) {
      assigned.insert(d.name);
    }
  }

  for (std::size_t i = 0; i < program.ops.size(); ++i) {
    const Op& op = program.ops[i];
    const std::string where = "op " + std::to_string(i) + " (" + std::string(to_string(op.op)) + ")";
    if (op.args.size() != arity(op.op)) {
      return Diagnostic{ErrorCode::kInvalidProgram, op.result,
                        where + " expects " + std::to_string(arity(op.op)) + " operands"};
    }
    if (op.op == OpCode::kConst) {
      if (op.args[0] != "0" && op.args[0] != "1") {
        return Diagnostic{ErrorCode::kInvalidProgram, op.result, where + " literal must be 0 or 1"};
      }
    } else {
      for (const auto& a : op.args) {
        if (!declared.contains(a)) {
          return Diagnostic{ErrorCode::kUndeclaredOperand, a, where + " reads undeclared " + a};
        }
        if (!assigned.contains(a)) {
          return Diagnostic{ErrorCode::kUseBeforeAssignment, a, where + " reads " + a + " before it is assigned"};
        }
      }
    }
    auto it = declared.find(op.result);
    if (it == declared.end()) {
      return Diagnostic{ErrorCode::kUndeclaredOperand, op.result,
                        where + " writes undeclared " + op.result};
    }
    const Role role = it->second->role;
    if (role != Role::kOutput && role != Role::kScratch) {
      return Diagnostic{ErrorCode::kReassignment, op.result,
                        where + " writes " + std::string(to_string(role)) + " " + op.result};
    }
    if (!assigned.insert(op.result).second) {
      return Diagnostic{ErrorCode::kReassignment, op.result, where + " reassigns " + op.result};
    }
  }

  for (const auto& d : program.decls) {
    if (d.role == Role::kOutput && !assigned.contains(d.name)) {
      return Diagnostic{ErrorCode::kInvalidProgram, d.name, "output " + d.name + " never assigned"};
    }
  }
  return std::nullopt;
}

void validate(const BitProgram& program) {
  if (auto d = check(program)) throw SimError(d->code, d->message.empty() ? d->subject : d->message);
}

nlohmann::ordered_json to_json(const BitProgram& program) {
  nlohmann::ordered_json doc;
  auto decls = nlohmann::ordered_json::array();
  for (const auto& d : program.decls) {
    nlohmann::ordered_json j;
    j["name"] = d.name;
    j["role"] = to_string(d.role);
    if (d.width != 0) j["width"] = d.width;
    decls.push_back(std::move(j));
  }
  auto ops = nlohmann::ordered_json::array();
  for (const auto& o : program.ops) {
    nlohmann::ordered_json j;
    j["op"] = to_string(o.op);
    j["args"] = o.args;
    j["result"] = o.result;
    ops.push_back(std::move(j));
  }
  doc["decls"] = std::move(decls);
  doc["ops"] = std::move(ops);
  return doc;
}

BitProgram program_from_json(const nlohmann::json& doc) {
  auto fail = [](const std::string& msg) { throw SimError(ErrorCode::kInvalidProgram, msg); };
  if (!doc.is_object() || !doc.contains("decls") || !doc.contains("ops")) {
    fail("program must be an object with decls and ops");
  }
  BitProgram p;
  for (const auto& j : doc.at("decls")) {
    Decl d;
    d.name = j.at("name").get<std::string>();
    auto role = parse_role(j.at("role").get<std::string>());
    if (!role) fail("unknown role for " + d.name);
    d.role = *role;
    if (j.contains("width")) d.width = j.at("width").get<std::size_t>();
    p.decls.push_back(std::move(d));
  }
  for (const auto& j : doc.at("ops")) {
    Op o;
    auto code = parse_opcode(j.at("op").get<std::string>());
    if (!code) fail("unknown op " + j.at("op").dump());
    o.op = *code;
    o.args = j.at("args").get<std::vector<std::string>>();
    o.result = j.at("result").get<std::string>();
    p.ops.push_back(std::move(o));
  }
  return p;
}

RowMap interpret(const BitProgram& program, const RowMap& inputs) {
  validate(program);
  std::size_t width = 0;
  RowMap env;
  for (const auto& name : program.inputs()) {
    auto it = inputs.find(name);
    if (it == inputs.end()) throw SimError(ErrorCode::kMissingInput, name);
    if (width != 0 && it->second.width() != width) {
      throw SimError(ErrorCode::kWidthMismatch, name);
    }
    width = it->second.width();
    env.emplace(name, it->second);
  }
  if (width == 0) {
    for (const auto& d : program.decls) width = std::max(width, d.width);
  }
  if (width == 0) throw SimError(ErrorCode::kWidthMismatch, "cannot infer row width");
  for (const auto& d : program.decls) {
    if (d.role == Role::kConst0) env.emplace(d.name, RowVector(width, false));
    if (d.role == Role::kConst1) env.emplace(d.name, RowVector(width, true));
  }
  for (const auto& o : program.ops) {
    auto arg = [&](std::size_t i) -> const RowVector& { return env.at(o.args[i]); };
    RowVector r;
    switch (o.op) {
      case OpCode::kNot: r = ~arg(0); break;
      case OpCode::kAnd: r = arg(0) & arg(1); break;
      case OpCode::kOr: r = arg(0) | arg(1); break;
      case OpCode::kNand: r = ~(arg(0) & arg(1)); break;
      case OpCode::kNor: r = ~(arg(0) | arg(1)); break;
      case OpCode::kXor: r = arg(0) ^ arg(1); break;
      case OpCode::kXnor: r = ~(arg(0) ^ arg(1)); break;
      case OpCode::kCopy: r = arg(0); break;
      case OpCode::kConst: r = RowVector(width, o.args[0] == "1"); break;
      case OpCode::kMaj: r = majority(arg(0), arg(1), arg(2)); break;
    }
    env.insert_or_assign(o.result, std::move(r));
  }
  RowMap out;
  for (const auto& name : program.outputs()) out.emplace(name, env.at(name));
  return out;
}

// ---------------------------------------------------------------------------

std::string ProgramBuilder::fresh() { return "t" + std::to_string(next_temp_++); }

std::string ProgramBuilder::input(std::string name) {
  program_.decls.push_back({name, Role::kInput, 0});
  return name;
}

std::string ProgramBuilder::const_row(bool value) {
  const std::string name = value ? "one" : "zero";
  if (program_.find(name) == nullptr) {
    program_.decls.push_back({name, value ? Role::kConst1 : Role::kConst0, 0});
  }
  return name;
}

std::string ProgramBuilder::op(OpCode code, std::vector<std::string> args) {
  std::string result = fresh();
  program_.decls.push_back({result, Role::kScratch, 0});
  program_.ops.push_back({code, std::move(args), result});
  return result;
}

std::string ProgramBuilder::constant(bool value) { return op(OpCode::kConst, {value ? "1" : "0"}); }

void ProgramBuilder::output(const std::string& value, const std::string& name) {
  Decl* decl = nullptr;
  for (auto& d : program_.decls) {
    if (d.name == value) decl = &d;
  }
  if (decl == nullptr) throw SimError(ErrorCode::kUndeclaredOperand, value);
  if (decl->role != Role::kScratch) {
    program_.decls.push_back({name, Role::kOutput, 0});
    program_.ops.push_back({OpCode::kCopy, {value}, name});
    return;
  }
  decl->name = name;
  decl->role = Role::kOutput;
  // Outputs are listed in the order they were marked.
  Decl moved = *decl;
  std::erase_if(program_.decls, [&](const Decl& d) { return d.name == name; });
  program_.decls.push_back(std::move(moved));
  for (auto& o : program_.ops) {
    if (o.result == value) o.result = name;
    for (auto& a : o.args) {
      if (a == value) a = name;
    }
  }
}

BitProgram ProgramBuilder::build() const { return program_; }

}  // namespace fepim

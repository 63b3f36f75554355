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

#include "fepim/program.hpp"
#include "helpers.hpp"

using namespace fepim;
using testing::error_of;

namespace {

BitProgram nand_program() {
  BitProgram p;
  p.decls = {{"a", Role::kInput}, {"b", Role::kInput}, {"y", Role::kOutput}};
  p.ops = {{OpCode::kNand, {"a", "b"}, "y"}};
  return p;
}

}  // namespace

TEST_CASE("validate accepts well-formed programs") {
  CHECK_FALSE(check(BitProgram{}).has_value());
  CHECK_FALSE(check(nand_program()).has_value());
}

TEST_CASE("validate reports the first violation") {
  auto p = nand_program();
  p.ops[0].args[1] = "t3";
  const auto d = check(p);
  REQUIRE(d.has_value());
  CHECK(d->code == ErrorCode::kUndeclaredOperand);
  CHECK(d->subject == "t3");

  p = nand_program();
  p.ops.push_back({OpCode::kNot, {"a"}, "y"});
  CHECK(check(p)->code == ErrorCode::kReassignment);

  p = nand_program();
  p.ops[0].result = "a";  // writing an input
  CHECK(check(p)->code == ErrorCode::kReassignment);

  p = nand_program();
  p.decls[0].width = 8;
  p.decls[1].width = 16;
  CHECK(check(p)->code == ErrorCode::kWidthMismatch);

  p = nand_program();
  p.decls.push_back({"t", Role::kScratch});
  p.ops.insert(p.ops.begin(), {OpCode::kNot, {"t"}, "y"});
  CHECK(check(p)->code == ErrorCode::kUseBeforeAssignment);

  p = nand_program();
  p.ops[0].args.pop_back();
  CHECK(check(p)->code == ErrorCode::kInvalidProgram);

  p = nand_program();
  p.ops.clear();
  CHECK(check(p)->code == ErrorCode::kInvalidProgram);  // output never assigned

  CHECK(error_of([&] { validate(p); }) == ErrorCode::kInvalidProgram);
}

TEST_CASE("interpret evaluates columnwise") {
  RowMap in;
  in["a"] = RowVector::from_string("1010");
  in["b"] = RowVector::from_string("1100");
  CHECK(interpret(nand_program(), in).at("y").to_string() == "0111");

  in.erase("b");
  CHECK(error_of([&] { interpret(nand_program(), in); }) == ErrorCode::kMissingInput);
}

TEST_CASE("every opcode in the interpreter") {
  const auto a = RowVector::from_string("0011");
  const auto b = RowVector::from_string("0101");
  const auto c = RowVector::from_string("1110");
  struct Case {
    OpCode op;
    std::vector<std::string> args;
    const char* expected;
  };
  const Case cases[] = {
      {OpCode::kNot, {"a"}, "1100"},        {OpCode::kAnd, {"a", "b"}, "0001"},
      {OpCode::kOr, {"a", "b"}, "0111"},    {OpCode::kNand, {"a", "b"}, "1110"},
      {OpCode::kNor, {"a", "b"}, "1000"},   {OpCode::kXor, {"a", "b"}, "0110"},
      {OpCode::kXnor, {"a", "b"}, "1001"},  {OpCode::kCopy, {"b"}, "0101"},
      {OpCode::kConst, {"1"}, "1111"},      {OpCode::kMaj, {"a", "b", "c"}, "0111"},
  };
  for (const auto& c_ : cases) {
    BitProgram p;
    p.decls = {{"a", Role::kInput}, {"b", Role::kInput}, {"c", Role::kInput}, {"y", Role::kOutput}};
    p.ops = {{c_.op, c_.args, "y"}};
    const auto out = interpret(p, {{"a", a}, {"b", b}, {"c", c}});
    CAPTURE(to_string(c_.op));
    CHECK(out.at("y").to_string() == c_.expected);
  }
}

TEST_CASE("BitProgram JSON round trip") {
  ProgramBuilder b;
  const auto x = b.input("x");
  const auto y = b.input("y");
  const auto one = b.const_row(true);
  b.output(b.maj(b.xor_(x, y), one, b.not_(x)), "out");
  b.output(x, "copy_of_x");
  const auto p = b.build();
  validate(p);
  const auto doc = to_json(p);
  CHECK(doc["decls"][0]["name"] == "x");
  CHECK(doc["decls"][0]["role"] == "input");
  const auto back = program_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(to_json(back) == doc);
  CHECK(back.outputs() == std::vector<std::string>{"out", "copy_of_x"});

  CHECK(error_of([] { program_from_json(nlohmann::json::parse(R"({"decls": []})")); }) ==
        ErrorCode::kInvalidProgram);
  CHECK(error_of([] {
          program_from_json(nlohmann::json::parse(
              R"({"decls": [], "ops": [{"op": "FROB", "args": [], "result": "y"}]})"));
        }) == ErrorCode::kInvalidProgram);
}

TEST_CASE("two-input op count") {
  ProgramBuilder b;
  const auto x = b.input("x");
  const auto y = b.input("y");
  b.output(b.and_(b.not_(x), b.xor_(x, y)), "z");
  CHECK(b.build().two_input_op_count() == 2);
}

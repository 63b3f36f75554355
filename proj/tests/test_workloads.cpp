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

#include <algorithm>

#include "fepim/workloads.hpp"
#include "helpers.hpp"

using namespace fepim;
using testing::error_of;

namespace {

constexpr std::size_t kWidth = 65536;

WorkloadSpec spec(Workload w, std::uint64_t bytes, std::uint64_t seed = 1) {
  WorkloadSpec s;
  s.workload = w;
  s.size_bytes = bytes;
  s.seed = seed;
  return s;
}

std::vector<OpCode> opcodes(const BitProgram& p) {
  std::vector<OpCode> out;
  for (const auto& o : p.ops) out.push_back(o.op);
  return out;
}

}  // namespace

TEST_CASE("CRC-8 reference check value") {
  const std::uint8_t msg[] = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
  CHECK(crc8_reference(msg, sizeof msg, 0x07, 0x00) == 0xF4);
  CHECK(crc8_reference(msg, 0, 0x07, 0x00) == 0x00);
  CHECK(crc8_reference(msg, 0, 0x07, 0x5A) == 0x5A);
}

TEST_CASE("bit-sliced CRC program agrees with the reference on chosen messages") {
  WorkloadSpec s = spec(Workload::kCrc8, 0);
  s.params.message_bytes = 9;
  const auto p = build_program(s);
  // three columns: "123456789", all zero, all 0xFF
  const std::uint8_t msgs[3][9] = {{'1', '2', '3', '4', '5', '6', '7', '8', '9'},
                                   {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                   {255, 255, 255, 255, 255, 255, 255, 255, 255}};
  RowMap in;
  for (std::size_t i = 0; i < 72; ++i) {
    RowVector r(3);
    for (std::size_t col = 0; col < 3; ++col) r.set(col, (msgs[col][i / 8] >> (7 - i % 8)) & 1);
    in["m" + std::to_string(i)] = r;
  }
  const auto out = interpret(p, in);
  for (std::size_t col = 0; col < 3; ++col) {
    unsigned crc = 0;
    for (unsigned k = 0; k < 8; ++k) crc |= unsigned(out.at("crc" + std::to_string(k)).get(col)) << k;
    CHECK(crc == crc8_reference(msgs[col], 9, 0x07, 0x00));
  }
}

TEST_CASE("xor_cipher is an involution and set_difference(A, A) is empty") {
  const auto p = build_program(spec(Workload::kXorCipher, 0));
  Xorshift64Star rng(4);
  const auto plain = testing::random_row(300, rng);
  const auto key = testing::random_row(300, rng);
  const auto c = interpret(p, {{"p", plain}, {"key", key}}).at("c");
  CHECK(interpret(p, {{"p", c}, {"key", key}}).at("c") == plain);

  const auto d = build_program(spec(Workload::kSetDifference, 0));
  CHECK(interpret(d, {{"a", plain}, {"b", plain}}).at("out").all(false));
}

TEST_CASE("program shapes") {
  const auto inter = build_program(spec(Workload::kSetIntersection, 0));
  CHECK(opcodes(inter) == std::vector<OpCode>{OpCode::kAnd});

  auto masked = opcodes(build_program(spec(Workload::kMaskedInit, 0)));
  std::sort(masked.begin(), masked.end());
  std::vector<OpCode> expected = {OpCode::kNot, OpCode::kAnd, OpCode::kAnd, OpCode::kOr};
  std::sort(expected.begin(), expected.end());
  CHECK(masked == expected);

  CHECK(opcodes(build_program(spec(Workload::kSetUnion, 0))) == std::vector<OpCode>{OpCode::kOr});

  WorkloadSpec bnn = spec(Workload::kBnnInference, 0);
  bnn.params.bnn_inputs = 8;
  bnn.params.bnn_neurons = 1;
  bnn.params.bnn_threshold = 4;
  const auto p = build_program(bnn);
  const auto ops = opcodes(p);
  CHECK(std::count(ops.begin(), ops.end(), OpCode::kXnor) == 8);
  CHECK(p.outputs() == std::vector<std::string>{"y0"});
}

TEST_CASE("BNN program matches a scalar neuron exhaustively over one weight set") {
  WorkloadSpec s = spec(Workload::kBnnInference, 0);
  s.params.bnn_inputs = 8;
  s.params.bnn_neurons = 1;
  s.params.bnn_threshold = 4;
  const auto p = build_program(s);
  const unsigned weights = 0b10110010;
  // column v holds input vector v
  RowMap in;
  for (unsigned i = 0; i < 8; ++i) {
    RowVector x(256);
    for (unsigned v = 0; v < 256; ++v) x.set(v, (v >> i) & 1);
    in["x" + std::to_string(i)] = x;
    in["w0_" + std::to_string(i)] = RowVector(256, (weights >> i) & 1);
  }
  const auto y = interpret(p, in).at("y0");
  for (unsigned v = 0; v < 256; ++v) {
    const int matches = __builtin_popcount(~(v ^ weights) & 0xff);
    CHECK(y.get(v) == (matches > 4));
  }
}

TEST_CASE("bitmap predicate parsing") {
  const auto pred = parse_predicate("(b1 & b2) | (b3 & !b4)");
  CHECK(pred.max_index() == 4);
  CHECK(pred.eval({true, true, false, false}));
  CHECK(pred.eval({false, false, true, false}));
  CHECK_FALSE(pred.eval({false, true, true, true}));
  CHECK(parse_predicate("~b2").eval({false, false}));
  CHECK(error_of([] { parse_predicate("b1 &"); }) == ErrorCode::kUnsupportedParams);
  CHECK(error_of([] { parse_predicate("b0"); }) == ErrorCode::kUnsupportedParams);
  CHECK(error_of([] { parse_predicate("(b1"); }) == ErrorCode::kUnsupportedParams);
}

TEST_CASE("dataset generation") {
  const auto a = generate(spec(Workload::kSetUnion, 16384, 1), kWidth);
  const auto b = generate(spec(Workload::kSetUnion, 16384, 1), kWidth);
  const auto c = generate(spec(Workload::kSetUnion, 16384, 2), kWidth);
  CHECK(a.data == b.data);
  CHECK(a.data != c.data);

  // 8192 bytes of a two-row record: 32768 records, one instance
  CHECK(a.instances == 1);
  CHECK(a.records == 65536);
  const auto one = generate(spec(Workload::kSetIntersection, 8192), kWidth);
  CHECK(one.instances == 1);

  CHECK(error_of([] { generate(spec(Workload::kCrc8, 1000), kWidth); }) ==
        ErrorCode::kSizeNotAligned);

  const auto empty = generate(spec(Workload::kCrc8, 0), kWidth);
  CHECK(empty.instances == 0);
  CHECK(empty.records == 0);
}

TEST_CASE("params validation") {
  CHECK(error_of([] {
          params_from_json(Workload::kCrc8, nlohmann::json::parse(R"({"predicate": "b1"})"));
        }) == ErrorCode::kUnsupportedParams);
  const auto p = params_from_json(Workload::kBitmapQuery,
                                  nlohmann::json::parse(R"({"predicate": "b1 | b2"})"));
  CHECK(p.predicate == "b1 | b2");
  WorkloadSpec s = spec(Workload::kBnnInference, 0);
  s.params.bnn_inputs = 0;
  CHECK(error_of([&] { build_program(s); }) == ErrorCode::kUnsupportedParams);
}

TEST_CASE("every workload matches its oracle on both backends at small size") {
  RunSettings settings;
  settings.geometry.row_width = 4096;
  for (auto w : kAllWorkloads) {
    // two full instances plus nothing else: 2 * 4096 records
    const auto s = spec(w, 0);
    WorkloadSpec sized = s;
    sized.size_bytes = 2 * 4096 * record_rows(s) / 8;
    const auto fe = run(sized, Backend::kFeram, settings);
    const auto dr = run(sized, Backend::kDram, settings);
    CAPTURE(to_string(w));
    CHECK(fe.oracle_match);
    CHECK(dr.oracle_match);
    CHECK(fe.output_digest == dr.output_digest);
    CHECK(fe.output_digest == fe.oracle_digest);
    CHECK(fe.instances == 2);
    CHECK(dr.ledger.total_energy_j > fe.ledger.total_energy_j);
    CHECK(fe.ledger.refresh_energy_j == 0.0);
    CHECK(dr.ledger.refresh_energy_j > 0.0);
  }
}

TEST_CASE("zero-size run") {
  for (auto backend : {Backend::kFeram, Backend::kDram}) {
    const auto r = run(spec(Workload::kSetUnion, 0), backend);
    CHECK(r.oracle_match);
    CHECK(r.instances == 0);
    // only the one-time constants remain
    const auto writes = r.ledger.count(CommandKind::kFeWriteRow) + r.ledger.count(CommandKind::kDrWriteRow);
    CHECK(r.ledger.command_count() == writes);
    CHECK(writes <= 2);
  }
}

TEST_CASE("cost is linear in size") {
  RunSettings settings;
  settings.geometry.row_width = 1024;
  for (auto backend : {Backend::kFeram, Backend::kDram}) {
    double e[3];
    for (int k = 0; k < 3; ++k) {
      auto s = spec(Workload::kMaskedInit, 0);
      s.size_bytes = (1u << k) * 4 * 1024 * record_rows(s) / 8;
      e[k] = run(s, backend, settings).ledger.total_energy_j;
    }
    // equal slope between consecutive doublings, up to one-time setup
    CHECK((e[2] - e[1]) == doctest::Approx(2 * (e[1] - e[0])).epsilon(1e-9));
  }
}

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

#include "fepim/cell.hpp"
#include "helpers.hpp"

using namespace fepim;
using testing::error_of;

namespace {

// Independent oracles: majority by counting ones, and the control-bit form
// MIN(A, B, C) = NOT(C(A + B) + NOT(C)(A B)).
bool maj_by_count(bool a, bool b, bool c) { return int(a) + int(b) + int(c) >= 2; }
bool min_formula(bool a, bool b, bool c) { return !((c && (a || b)) || (!c && (a && b))); }

FeCell cell_with(bool a, bool b, bool c) {
  FeCell cell;
  write_cap(cell, 0, a);
  write_cap(cell, 1, b);
  write_cap(cell, 2, c);
  return cell;
}

}  // namespace

TEST_CASE("write_cap programs one capacitor and counts cycles") {
  FeCell cell;
  write_cap(cell, 0, true);
  CHECK(cell.cap(0).polarization);
  CHECK(cell.cap(0).disturb_count == 0);
  CHECK(cell.cap(0).program_cycles == 1);

  write_cap(cell, 1, false);
  write_cap(cell, 1, false);
  CHECK_FALSE(cell.cap(1).polarization);
  CHECK(cell.cap(1).program_cycles == 2);

  CHECK(error_of([&] { write_cap(cell, 3, true); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("endurance limit aborts or warns per policy") {
  CellConfig cfg;
  cfg.endurance_limit = 3;
  FeCell cell(cfg);
  for (int i = 0; i < 3; ++i) write_cap(cell, 0, i % 2);
  CHECK(error_of([&] { write_cap(cell, 0, true); }) == ErrorCode::kEnduranceExceeded);
  CHECK(cell.cap(0).program_cycles == 3);

  cfg.endurance_policy = EndurancePolicy::kWarn;
  FeCell lenient(cfg);
  for (int i = 0; i < 5; ++i) write_cap(lenient, 0, true);
  CHECK(lenient.cap(0).program_cycles == 5);
  CHECK(lenient.endurance_warnings() == 2);
}

TEST_CASE("qnro_read inverts without disturbing the stored bit") {
  for (bool stored : {false, true}) {
    FeCell cell;
    write_cap(cell, 0, stored);
    CHECK(qnro_read(cell, 0) == !stored);
    CHECK(cell.cap(0).polarization == stored);
    CHECK(cell.cap(0).disturb_count == 1);
  }
}

TEST_CASE("qnro_read budget boundary") {
  CellConfig cfg;
  cfg.disturb_budget = 5;
  for (bool stored : {false, true}) {
    FeCell cell(cfg);
    write_cap(cell, 2, stored);
    for (int k = 1; k <= 5; ++k) {
      CHECK(qnro_read(cell, 2) == !stored);
      CHECK(cell.cap(2).polarization == stored);
    }
    CHECK(error_of([&] { qnro_read(cell, 2); }) == ErrorCode::kDisturbBudgetExhausted);

    // write-back restores the budget
    write_back(cell, 2, stored);
    CHECK(cell.cap(2).disturb_count == 0);
    CHECK(qnro_read(cell, 2) == !stored);
  }
}

TEST_CASE("write_back has the write_cap contract") {
  FeCell cell;
  write_cap(cell, 1, true);
  (void)qnro_read(cell, 1);
  write_back(cell, 1, true);
  CHECK(cell.cap(1).polarization);
  CHECK(cell.cap(1).disturb_count == 0);
  CHECK(cell.cap(1).program_cycles == 2);
  CHECK(error_of([&] { write_back(cell, 3, false); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("tba_sense is MINORITY for all eight inputs") {
  for (int v = 0; v < 8; ++v) {
    const bool a = v & 4, b = v & 2, c = v & 1;
    FeCell cell = cell_with(a, b, c);
    const bool sensed = tba_sense(cell, {0, 1, 2});
    CAPTURE(v);
    CHECK(sensed == !maj_by_count(a, b, c));
    CHECK(sensed == min_formula(a, b, c));
    CHECK(sensed == minority(a, b, c));
    // stored values untouched, one disturb unit each
    CHECK(cell.cap(0).polarization == a);
    CHECK(cell.cap(1).polarization == b);
    CHECK(cell.cap(2).polarization == c);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cell.cap(i).disturb_count == 1);
  }
}

TEST_CASE("tba_sense documented points") {
  auto sense = [](bool a, bool b, bool c) {
    FeCell cell = cell_with(a, b, c);
    return tba_sense(cell, {0, 1, 2});
  };
  CHECK(sense(0, 0, 0) == 1);
  CHECK(sense(1, 1, 0) == 0);
  CHECK(sense(0, 1, 1) == 0);
  CHECK(sense(1, 0, 0) == 1);
}

TEST_CASE("tba_sense is permutation invariant") {
  const std::array<std::array<std::size_t, 3>, 6> perms = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int v = 0; v < 8; ++v) {
    FeCell cell = cell_with(v & 4, v & 2, v & 1);
    const bool first = tba_sense(cell, perms[0]);
    for (const auto& p : perms) CHECK(tba_sense(cell, p) == first);
  }
}

TEST_CASE("control bit selects NAND or NOR") {
  for (int v = 0; v < 4; ++v) {
    const bool a = v & 2, b = v & 1;
    FeCell nand_cell = cell_with(a, b, false);
    FeCell nor_cell = cell_with(a, b, true);
    CHECK(tba_sense(nand_cell, {0, 1, 2}) == !(a && b));
    CHECK(tba_sense(nor_cell, {0, 1, 2}) == !(a || b));
  }
}

TEST_CASE("tba_sense argument errors") {
  CellConfig cfg;
  cfg.n_caps = 4;
  cfg.disturb_budget = 2;
  FeCell cell(cfg);
  CHECK(error_of([&] { tba_sense(cell, {0, 1, 4}); }) == ErrorCode::kIndexOutOfRange);
  CHECK(error_of([&] { tba_sense(cell, {0, 1, 1}); }) == ErrorCode::kDuplicateIndex);
  (void)tba_sense(cell, {0, 1, 2});
  (void)tba_sense(cell, {1, 2, 3});
  // cap 1 and 2 are at budget now
  CHECK(error_of([&] { tba_sense(cell, {0, 1, 3}); }) == ErrorCode::kDisturbBudgetExhausted);
  CHECK(cell.cap(0).disturb_count == 1);  // failed sense charges nothing
}

TEST_CASE("a 2T-nC cell with more capacitors senses any three") {
  CellConfig cfg;
  cfg.n_caps = 5;
  FeCell cell(cfg);
  const bool bits[5] = {1, 0, 1, 1, 0};
  for (std::size_t i = 0; i < 5; ++i) write_cap(cell, i, bits[i]);
  CHECK(tba_sense(cell, {0, 2, 3}) == false);
  CHECK(tba_sense(cell, {1, 4, 0}) == true);
}

TEST_CASE("DRAM cell destructive read") {
  DramCellState cell;
  dram_restore(cell, true);
  CHECK(dram_read(cell) == true);
  CHECK_FALSE(cell.valid);
  CHECK(error_of([&] { dram_read(cell); }) == ErrorCode::kInvalidCellRead);
  dram_restore(cell, false);
  CHECK(dram_read(cell) == false);
}

TEST_CASE("DRAM TRA leaves all three cells at the majority") {
  for (int v = 0; v < 8; ++v) {
    DramCellState a{bool(v & 4), true}, b{bool(v & 2), true}, c{bool(v & 1), true};
    const bool m = dram_tra(a, b, c);
    CHECK(m == maj_by_count(v & 4, v & 2, v & 1));
    for (auto* x : {&a, &b, &c}) {
      CHECK(x->valid);
      CHECK(x->bit == m);
    }
  }
}

TEST_CASE("CellConfig rejects zero fields") {
  CellConfig cfg;
  cfg.disturb_budget = 0;
  CHECK(error_of([&] { FeCell c(cfg); }) == ErrorCode::kUnsupportedGeometry);
}

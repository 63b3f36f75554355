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

#include "fepim/cost.hpp"
#include "helpers.hpp"

using namespace fepim;
using testing::error_of;

TEST_CASE("per-command energies") {
  const CostParams p;
  EnergyLedger dram;
  dram.backend = Backend::kDram;
  charge(dram, CommandKind::kDrActivate, p);
  CHECK(dram.total_cycles == 1);
  CHECK(command_energy_j(dram, p) == doctest::Approx(22.6e-9));

  EnergyLedger fe;
  charge(fe, CommandKind::kFeActivateTba, p);
  CHECK(command_energy_j(fe, p) == doctest::Approx(16.6e-9));
  charge(fe, CommandKind::kFePrecharge, p);
  CHECK(command_energy_j(fe, p) == doctest::Approx(16.92e-9));
  CHECK(fe.total_cycles == 2);

  CHECK(p.energy_nj(CommandKind::kFeWriteRow) == 16.6);
  CHECK(p.energy_nj(CommandKind::kDrWriteRow) == 22.6);
  CHECK(p.energy_nj(CommandKind::kDrRefreshRow) == doctest::Approx(22.92));

  CHECK(error_of([&] { charge(fe, CommandKind::kDrActivate, p); }) ==
        ErrorCode::kUnknownCommandKind);
}

TEST_CASE("finalize: additivity and refresh") {
  const CostParams p;
  EnergyLedger empty;
  empty.backend = Backend::kDram;
  finalize(empty, p, 1ULL << 20);
  CHECK(empty.total_energy_j == 0.0);
  CHECK(empty.exec_time_s == 0.0);
  CHECK(empty.refresh_energy_j == 0.0);

  EnergyLedger d;
  d.backend = Backend::kDram;
  for (int i = 0; i < 1000; ++i) charge(d, CommandKind::kDrActivate, p);
  finalize(d, p, 1ULL << 20);
  CHECK(d.refresh_energy_j > 0.0);
  CHECK(d.total_energy_j == doctest::Approx(command_energy_j(d, p) + d.refresh_energy_j));
  CHECK(d.exec_time_s == doctest::Approx((1000 + d.refresh_cycles) * 10e-9));
  // 10 us of a 64 ms window
  CHECK(d.refresh_energy_j == doctest::Approx(1e-5 / 64e-3 * 1048576 * 22.92e-9));

  EnergyLedger f;
  for (int i = 0; i < 1000; ++i) charge(f, CommandKind::kFeActivateTba, p);
  finalize(f, p, 1ULL << 20);
  CHECK(f.refresh_energy_j == 0.0);
  CHECK(f.refresh_cycles == 0.0);
}

TEST_CASE("merge then finalize equals finalize of the concatenation") {
  const CostParams p;
  EnergyLedger a, b, both;
  a.backend = b.backend = both.backend = Backend::kDram;
  const CommandKind seq_a[] = {CommandKind::kDrActivate, CommandKind::kDrCopyRowClone,
                               CommandKind::kDrPrecharge};
  const CommandKind seq_b[] = {CommandKind::kDrActivateTra, CommandKind::kDrNotDcc};
  for (auto k : seq_a) charge(a, k, p), charge(both, k, p);
  for (auto k : seq_b) charge(b, k, p), charge(both, k, p);
  finalize(a, p, 1 << 20);
  finalize(b, p, 1 << 20);
  auto merged = merge(a, b);
  CHECK(merged.refresh_energy_j == 0.0);
  finalize(merged, p, 1 << 20);
  finalize(both, p, 1 << 20);
  CHECK(merged.counts == both.counts);
  CHECK(merged.total_cycles == both.total_cycles);
  CHECK(merged.total_energy_j == doctest::Approx(both.total_energy_j).epsilon(1e-15));
  CHECK(merged.total_energy_j >= a.total_energy_j);
}

TEST_CASE("CostParams validation") {
  CostParams p;
  p.cycle_time_ns = 0;
  CHECK(error_of([&] { p.validate(); }) == ErrorCode::kConfigError);
  p = {};
  p.e_copy = -1;
  CHECK(error_of([&] { p.validate(); }) == ErrorCode::kConfigError);
}

TEST_CASE("area model") {
  const AreaModel m;
  const auto three = area_report(m, 3, false);
  CHECK(three.planar_area_nm2 == doctest::Approx(70560.0));
  CHECK(three.vertical_area_nm2 == doctest::Approx(16900.0));
  CHECK(three.density_ratio == doctest::Approx(4.175).epsilon(1e-3));
  CHECK(three.area_with_periphery_nm2 == doctest::Approx(70560.0 * 1.5));

  CHECK(area_report(m, 1, false).planar_area_nm2 == doctest::Approx(23520.0));
  CHECK(planar_area_f2(m, 3) == doctest::Approx(90.0));

  AreaModel wide = m;
  wide.feature_size_nm = 56.0;
  CHECK(area_report(wide, 3, false).planar_area_nm2 ==
        doctest::Approx(4 * three.planar_area_nm2));

  const auto stacked = area_report(m, 3, true);
  CHECK(stacked.area_per_cell_nm2 == doctest::Approx(16900.0));
  CHECK(stacked.density_ratio == three.density_ratio);

  CHECK(error_of([&] { area_report(m, 0, false); }) == ErrorCode::kUnsupportedGeometry);
}

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
#include <cstdint>
#include <optional>

#include "fepim/command.hpp"

namespace fepim {

/// Per-command energies in nJ per row, times in ns/ms.
struct CostParams {
  double e_activate_dram = 22.6;
  double e_activate_feram = 16.6;
  double e_precharge = 0.32;
  double e_copy = 0.32;
  /// Data-load row write. Unset means "the backend's ACTIVATE energy".
  std::optional<double> e_write_row;
  double cycle_time_ns = 10.0;
  std::uint32_t cycles_per_command = 1;
  double refresh_interval_ms = 64.0;

  void validate() const;

  double write_row_nj(Backend backend) const;
  double activate_nj(Backend backend) const;
  /// Energy charged for one command of `kind`, in nJ.
  double energy_nj(CommandKind kind) const;
};

struct EnergyLedger {
  Backend backend = Backend::kFeram;
  std::array<std::uint64_t, kCommandKindCount> counts{};
  std::uint64_t total_cycles = 0;
  double compute_energy_j = 0.0;
  double refresh_energy_j = 0.0;
  double refresh_cycles = 0.0;
  double exec_time_s = 0.0;
  double total_energy_j = 0.0;

  std::uint64_t count(CommandKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
  std::uint64_t command_count() const;

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;
};

/// Sum of count x energy over all kinds, in joules. This is the only place
/// command energy is summed, so ledger totals are additive by construction.
double command_energy_j(const EnergyLedger& ledger, const CostParams& params);

/// Books one command. Throws kUnknownCommandKind if `kind` does not belong to
/// the ledger's backend.
void charge(EnergyLedger& ledger, CommandKind kind, const CostParams& params);

/// Applies refresh overhead (DRAM only) for a memory of `total_rows` rows and
/// recomputes every derived total.
void finalize(EnergyLedger& ledger, const CostParams& params, std::uint64_t total_rows);

/// Adds command counts and cycles; refresh fields are cleared and must be
/// re-applied with finalize() on the merged duration.
EnergyLedger merge(const EnergyLedger& a, const EnergyLedger& b);

struct AreaModel {
  double feature_size_nm = 28.0;
  double base_area_f2 = 30.0;      // 2T-1C planar cell
  double per_cap_area_f2 = 30.0;   // each additional planar capacitor (90F² at n = 3)
  double peripheral_overhead = 1.5;
  double vertical_footprint_nm2 = 130.0 * 130.0;
};

struct AreaReport {
  std::uint32_t n_caps = 0;
  bool stacked = false;
  double area_per_cell_nm2 = 0.0;
  double planar_area_nm2 = 0.0;
  double vertical_area_nm2 = 0.0;
  /// Planar over vertical footprint for the same capacitor count.
  double density_ratio = 0.0;
  double area_with_periphery_nm2 = 0.0;
};

double planar_area_f2(const AreaModel& model, std::uint32_t n_caps);

/// Throws kUnsupportedGeometry for n_caps == 0 or a non-positive feature size.
AreaReport area_report(const AreaModel& model, std::uint32_t n_caps, bool stacked);

}  // namespace fepim

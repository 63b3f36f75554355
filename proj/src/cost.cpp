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

#include "fepim/cost.hpp"

#include <string>

#include "fepim/engine.hpp"
#include "fepim/error.hpp"

namespace fepim {

void CostParams::validate() const {
  const double energies[] = {e_activate_dram, e_activate_feram, e_precharge, e_copy,
                             e_write_row.value_or(0.0)};
  for (double e : energies) {
    if (!(e >= 0.0)) throw SimError(ErrorCode::kConfigError, "energies must be >= 0");
  }
  if (!(cycle_time_ns > 0.0)) throw SimError(ErrorCode::kConfigError, "cycle_time_ns must be > 0");
  if (!(refresh_interval_ms > 0.0)) {
    throw SimError(ErrorCode::kConfigError, "refresh_interval_ms must be > 0");
  }
  if (cycles_per_command == 0) {
    throw SimError(ErrorCode::kConfigError, "cycles_per_command must be >= 1");
  }
}

double CostParams::activate_nj(Backend backend) const {
  return backend == Backend::kFeram ? e_activate_feram : e_activate_dram;
}

double CostParams::write_row_nj(Backend backend) const {
  return e_write_row.value_or(activate_nj(backend));
}

double CostParams::energy_nj(CommandKind kind) const {
  switch (kind) {
    case CommandKind::kFeWriteRow:
    case CommandKind::kFeWriteBackRow: return write_row_nj(Backend::kFeram);
    case CommandKind::kFeActivateTba:
    case CommandKind::kFeActivateRead: return e_activate_feram;
    case CommandKind::kFeCopy: return e_copy;
    case CommandKind::kFePrecharge: return e_precharge;
    case CommandKind::kDrWriteRow: return write_row_nj(Backend::kDram);
    case CommandKind::kDrActivate:
    case CommandKind::kDrActivateTra: return e_activate_dram;
    case CommandKind::kDrCopyRowClone:
    case CommandKind::kDrNotDcc: return e_copy;
    case CommandKind::kDrPrecharge: return e_precharge;
    case CommandKind::kDrRefreshRow: return e_activate_dram + e_precharge;
  }
  throw SimError(ErrorCode::kUnknownCommandKind,
                 std::to_string(static_cast<int>(kind)));
}

std::uint64_t EnergyLedger::command_count() const {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

double command_energy_j(const EnergyLedger& ledger, const CostParams& params) {
  double nj = 0.0;
  for (auto kind : kAllCommandKinds) {
    const auto n = ledger.count(kind);
    if (n != 0) nj += static_cast<double>(n) * params.energy_nj(kind);
  }
  return nj * 1e-9;
}

namespace {

void recompute_totals(EnergyLedger& ledger, const CostParams& params) {
  ledger.compute_energy_j = command_energy_j(ledger, params);
  ledger.total_energy_j = ledger.compute_energy_j + ledger.refresh_energy_j;
  ledger.exec_time_s = (static_cast<double>(ledger.total_cycles) + ledger.refresh_cycles) *
                       params.cycle_time_ns * 1e-9;
}

}  // namespace

void charge(EnergyLedger& ledger, CommandKind kind, const CostParams& params) {
  const auto index = static_cast<std::size_t>(kind);
  if (index >= kCommandKindCount) {
    throw SimError(ErrorCode::kUnknownCommandKind, std::to_string(index));
  }
  if (backend_of(kind) != ledger.backend) {
    throw SimError(ErrorCode::kUnknownCommandKind,
                   std::string(to_string(kind)) + " on " + std::string(to_string(ledger.backend)));
  }
  ++ledger.counts[index];
  ledger.total_cycles += params.cycles_per_command;
  recompute_totals(ledger, params);
}

void finalize(EnergyLedger& ledger, const CostParams& params, std::uint64_t total_rows) {
  const auto refresh =
      refresh_accounting(ledger.backend, total_rows, ledger.total_cycles, params);
  ledger.refresh_energy_j = refresh.energy_j;
  ledger.refresh_cycles = refresh.cycles;
  recompute_totals(ledger, params);
}

EnergyLedger merge(const EnergyLedger& a, const EnergyLedger& b) {
  if (a.backend != b.backend) {
    throw SimError(ErrorCode::kInvalidSequence, "cannot merge ledgers of different backends");
  }
  EnergyLedger out;
  out.backend = a.backend;
  for (std::size_t i = 0; i < kCommandKindCount; ++i) out.counts[i] = a.counts[i] + b.counts[i];
  out.total_cycles = a.total_cycles + b.total_cycles;
  return out;
}

double planar_area_f2(const AreaModel& model, std::uint32_t n_caps) {
  return model.base_area_f2 + model.per_cap_area_f2 * (static_cast<double>(n_caps) - 1.0);
}

AreaReport area_report(const AreaModel& model, std::uint32_t n_caps, bool stacked) {
  if (n_caps == 0) throw SimError(ErrorCode::kUnsupportedGeometry, "n_caps must be >= 1");
  if (!(model.feature_size_nm > 0.0)) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "feature size must be > 0");
  }
  AreaReport r;
  r.n_caps = n_caps;
  r.stacked = stacked;
  const double f2 = model.feature_size_nm * model.feature_size_nm;
  r.planar_area_nm2 = planar_area_f2(model, n_caps) * f2;
  r.vertical_area_nm2 = model.vertical_footprint_nm2;
  r.area_per_cell_nm2 = stacked ? r.vertical_area_nm2 : r.planar_area_nm2;
  r.density_ratio = r.planar_area_nm2 / r.vertical_area_nm2;
  r.area_with_periphery_nm2 = r.area_per_cell_nm2 * model.peripheral_overhead;
  return r;
}

}  // namespace fepim

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
#include <span>
#include <vector>

#include "fepim/cell.hpp"
#include "fepim/command.hpp"
#include "fepim/cost.hpp"
#include "fepim/row_vector.hpp"

namespace fepim {

struct ArrayGeometry {
  std::size_t row_width = 65536;  // 8 KB rows
  std::size_t n_caps = 3;
  std::uint64_t total_rows = 1ULL << 20;  // 8 GB of 8 KB rows

  void validate() const;
};

/// Receives every executed command exactly once: books it in the ledger and,
/// when enabled, appends it to the trace.
class CommandSink {
 public:
  CommandSink(Backend backend, const CostParams& params, bool record_trace = true);

  void record(const Command& cmd);

  Backend backend() const noexcept { return ledger_.backend; }
  const CostParams& params() const noexcept { return params_; }
  const EnergyLedger& ledger() const noexcept { return ledger_; }
  EnergyLedger& ledger() noexcept { return ledger_; }
  const std::vector<Command>& trace() const noexcept { return trace_; }
  bool records_trace() const noexcept { return record_trace_; }

 private:
  CostParams params_;
  EnergyLedger ledger_;
  bool record_trace_;
  std::vector<Command> trace_;
};

/// A (row, capacitor) address in an FeRAM array.
struct CapSlot {
  std::uint32_t row = 0;
  std::uint16_t cap = 0;

  friend bool operator==(const CapSlot&, const CapSlot&) = default;
  friend auto operator<=>(const CapSlot&, const CapSlot&) = default;
};

/// Row-organized 2T-nC FeRAM array.
///
/// Every command addresses a whole row, so all cells of one (row, capacitor)
/// share the same disturb and program-cycle history. The array stores those
/// counters once per (row, capacitor) next to the packed polarization bits;
/// per-column behaviour is identical to running FeCell on each column.
class FeArray {
 public:
  FeArray(const ArrayGeometry& geometry, const CellConfig& cell, CommandSink& sink);

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  const CellConfig& cell_config() const noexcept { return cell_; }
  std::size_t rows_allocated() const noexcept { return rows_.size(); }

  /// When enabled, an activation that would exceed a capacitor's disturb
  /// budget first issues FE_WRITE_BACK_ROW for it instead of failing.
  void set_auto_write_back(bool enabled) noexcept { auto_write_back_ = enabled; }

  /// Executes one command. Writes take their data from `data`.
  void issue(const Command& cmd, const RowVector* data = nullptr);

  void write_row(std::uint32_t row, std::uint16_t cap, const RowVector& data,
                 Purpose purpose = Purpose::kLoad, std::int32_t origin = kNoOrigin);

  /// ACTIVATE(TBA) - COPY per destination - PRECHARGE.
  void acp(std::uint32_t row, const std::array<std::uint16_t, 3>& caps,
           std::span<const CapSlot> destinations, std::int32_t origin = kNoOrigin);

  /// ACTIVATE(QNRO) - COPY per destination - PRECHARGE.
  void not_row(std::uint32_t row, std::uint16_t cap, std::span<const CapSlot> destinations,
               std::int32_t origin = kNoOrigin);

  void write_back_row(std::uint32_t row, std::uint16_t cap);

  /// Host-side view of stored polarization; not a memory command.
  const RowVector& peek(std::uint32_t row, std::uint16_t cap) const;
  /// Behavioral state of one cell's capacitor.
  FeCapState cap_state(std::uint32_t row, std::uint16_t cap, std::size_t column) const;
  std::uint64_t disturb_count(std::uint32_t row, std::uint16_t cap) const;
  std::uint64_t program_cycles(std::uint32_t row, std::uint16_t cap) const;

  bool rsl_valid() const noexcept { return rsl_.has_value(); }
  const std::optional<RowVector>& rsl_buffer() const noexcept { return rsl_; }
  std::uint64_t endurance_warnings() const noexcept { return endurance_warnings_; }

 private:
  struct CapRow {
    RowVector bits;
    std::uint64_t disturb_count = 0;
    std::uint64_t program_cycles = 0;
  };

  CapRow& at(std::uint32_t row, std::int32_t cap);
  const CapRow& at(std::uint32_t row, std::int32_t cap) const;
  void ensure_row(std::uint32_t row);
  void program(CapRow& target, const RowVector& data, std::uint32_t row, std::int32_t cap);
  void prepare_read(std::uint32_t row, std::int32_t cap);
  void emit(const Command& cmd, const RowVector* data);

  ArrayGeometry geometry_;
  CellConfig cell_;
  CommandSink& sink_;
  std::vector<std::vector<CapRow>> rows_;
  std::optional<RowVector> rsl_;
  bool auto_write_back_ = false;
  std::uint64_t endurance_warnings_ = 0;
};

/// Row-organized 1T-1C DRAM array with Ambit-style designated rows: three
/// TRA compute rows (rows 0-2) and one dual-contact row (row 3).
class DramArray {
 public:
  static constexpr std::array<std::uint32_t, 3> kComputeRows = {0, 1, 2};
  static constexpr std::uint32_t kDccRow = 3;
  static constexpr std::uint32_t kFirstDataRow = 4;

  DramArray(const ArrayGeometry& geometry, CommandSink& sink);

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  std::size_t rows_allocated() const noexcept { return rows_.size(); }

  void issue(const Command& cmd, const RowVector* data = nullptr);

  void write_row(std::uint32_t row, const RowVector& data, Purpose purpose = Purpose::kLoad,
                 std::int32_t origin = kNoOrigin);

  /// ACTIVATE(src) - ROWCLONE(dst) - PRECHARGE.
  void aap(std::uint32_t src, std::uint32_t dst, Purpose purpose = Purpose::kOperandCopy,
           std::int32_t origin = kNoOrigin);

  /// ACTIVATE(TRA over the compute rows) - ROWCLONE(dst) - PRECHARGE.
  void tra_aap(std::uint32_t dst, std::int32_t origin = kNoOrigin);

  /// ACTIVATE(src) - inverted copy through the DCC row into dst - PRECHARGE.
  void not_dcc(std::uint32_t src, std::uint32_t dst, std::int32_t origin = kNoOrigin);

  const RowVector& peek(std::uint32_t row) const;
  bool row_valid(std::uint32_t row) const;
  DramCellState cell_state(std::uint32_t row, std::size_t column) const;
  bool buffer_open() const noexcept { return buffer_.has_value(); }

 private:
  struct Row {
    RowVector bits;
    bool valid = false;
  };

  Row& at(std::uint32_t row);
  const Row& at(std::uint32_t row) const;
  void ensure_row(std::uint32_t row);
  RowVector activate(std::uint32_t row);
  void emit(const Command& cmd, const RowVector* data);

  ArrayGeometry geometry_;
  CommandSink& sink_;
  std::vector<Row> rows_;
  std::optional<RowVector> buffer_;
};

/// Command-sequence builders shared by the arrays and the lowering passes.
namespace sequence {

Command fe_write(std::uint32_t row, std::uint16_t cap, Purpose purpose, std::int32_t origin,
                 DataSource source = {});
Command fe_write_back(std::uint32_t row, std::uint16_t cap);
void fe_acp(std::vector<Command>& out, std::uint32_t row, const std::array<std::uint16_t, 3>& caps,
            std::span<const CapSlot> destinations, std::int32_t origin);
void fe_not(std::vector<Command>& out, std::uint32_t row, std::uint16_t cap,
            std::span<const CapSlot> destinations, std::int32_t origin);

Command dr_write(std::uint32_t row, Purpose purpose, std::int32_t origin, DataSource source = {});
void dr_aap(std::vector<Command>& out, std::uint32_t src, std::uint32_t dst, Purpose purpose,
            std::int32_t origin);
void dr_tra_aap(std::vector<Command>& out, std::uint32_t dst, std::int32_t origin);
void dr_not_dcc(std::vector<Command>& out, std::uint32_t src, std::uint32_t dst,
                std::int32_t origin);

}  // namespace sequence

struct RefreshCharge {
  double energy_j = 0.0;
  double cycles = 0.0;
};

/// Amortized refresh: every row of the memory is refreshed once per refresh
/// interval, prorated linearly over the elapsed time. FeRAM never refreshes.
RefreshCharge refresh_accounting(Backend backend, std::uint64_t total_rows,
                                 std::uint64_t elapsed_cycles, const CostParams& params);

RefreshCharge refresh_accounting(const DramArray& array, const CostParams& params,
                                 std::uint64_t elapsed_cycles);

}  // namespace fepim

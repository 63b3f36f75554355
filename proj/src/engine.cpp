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

#include "fepim/engine.hpp"

#include <string>

#include "fepim/error.hpp"

namespace fepim {

void ArrayGeometry::validate() const {
  if (row_width == 0) throw SimError(ErrorCode::kUnsupportedGeometry, "row_width must be > 0");
  if (n_caps == 0) throw SimError(ErrorCode::kUnsupportedGeometry, "n_caps must be > 0");
  if (total_rows == 0) throw SimError(ErrorCode::kUnsupportedGeometry, "total_rows must be > 0");
}

CommandSink::CommandSink(Backend backend, const CostParams& params, bool record_trace)
    : params_(params), record_trace_(record_trace) {
  params_.validate();
  ledger_.backend = backend;
}

void CommandSink::record(const Command& cmd) {
  charge(ledger_, cmd.kind, params_);
  if (record_trace_) trace_.push_back(cmd);
}

namespace {

Command make(CommandKind kind, std::uint32_t row, Purpose purpose, std::int32_t origin) {
  Command c;
  c.kind = kind;
  c.row = row;
  c.purpose = purpose;
  c.origin = origin;
  return c;
}

void require_kind(CommandKind kind, Backend backend) {
  if (static_cast<std::size_t>(kind) >= kCommandKindCount || backend_of(kind) != backend) {
    throw SimError(ErrorCode::kUnknownCommandKind,
                   std::string(to_string(kind)) + " on " + std::string(to_string(backend)));
  }
}

void require_data(const Command& cmd, const RowVector* data, std::size_t width) {
  if (data == nullptr) {
    throw SimError(ErrorCode::kInvalidSequence,
                   std::string(to_string(cmd.kind)) + " issued without data");
  }
  if (data->width() != width) {
    throw SimError(ErrorCode::kWidthMismatch,
                   "row data has width " + std::to_string(data->width()) + ", array rows are " +
                       std::to_string(width));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FeArray

FeArray::FeArray(const ArrayGeometry& geometry, const CellConfig& cell, CommandSink& sink)
    : geometry_(geometry), cell_(cell), sink_(sink) {
  geometry_.validate();
  cell_.n_caps = geometry_.n_caps;
  cell_.validate();
  if (sink_.backend() != Backend::kFeram) {
    throw SimError(ErrorCode::kInvalidSequence, "FeArray needs an feram command sink");
  }
}

void FeArray::ensure_row(std::uint32_t row) {
  if (row >= geometry_.total_rows) {
    throw SimError(ErrorCode::kInvalidAddress,
                   "row " + std::to_string(row) + " beyond " + std::to_string(geometry_.total_rows));
  }
  while (rows_.size() <= row) {
    std::vector<CapRow> caps(geometry_.n_caps);
    for (auto& c : caps) c.bits = RowVector(geometry_.row_width);
    rows_.push_back(std::move(caps));
  }
}

FeArray::CapRow& FeArray::at(std::uint32_t row, std::int32_t cap) {
  if (cap < 0 || static_cast<std::size_t>(cap) >= geometry_.n_caps) {
    throw SimError(ErrorCode::kIndexOutOfRange,
                   "capacitor " + std::to_string(cap) + " of " + std::to_string(geometry_.n_caps));
  }
  ensure_row(row);
  return rows_[row][static_cast<std::size_t>(cap)];
}

const FeArray::CapRow& FeArray::at(std::uint32_t row, std::int32_t cap) const {
  if (cap < 0 || static_cast<std::size_t>(cap) >= geometry_.n_caps) {
    throw SimError(ErrorCode::kIndexOutOfRange,
                   "capacitor " + std::to_string(cap) + " of " + std::to_string(geometry_.n_caps));
  }
  if (row >= rows_.size()) {
    throw SimError(ErrorCode::kInvalidAddress, "row " + std::to_string(row) + " never written");
  }
  return rows_[row][static_cast<std::size_t>(cap)];
}

void FeArray::program(CapRow& target, const RowVector& data, std::uint32_t row,
                      std::int32_t cap) {
  if (target.program_cycles >= cell_.endurance_limit) {
    if (cell_.endurance_policy == EndurancePolicy::kAbort) {
      throw ColumnError(ErrorCode::kEnduranceExceeded,
                        "row " + std::to_string(row) + " cap " + std::to_string(cap) + " after " +
                            std::to_string(target.program_cycles) + " program cycles",
                        0);
    }
    ++endurance_warnings_;
  }
  target.bits = data;
  target.disturb_count = 0;
  ++target.program_cycles;
}

void FeArray::prepare_read(std::uint32_t row, std::int32_t cap) {
  CapRow& c = at(row, cap);
  if (c.disturb_count < cell_.disturb_budget) return;
  if (!auto_write_back_) {
    throw ColumnError(ErrorCode::kDisturbBudgetExhausted,
                      "row " + std::to_string(row) + " cap " + std::to_string(cap), 0);
  }
  write_back_row(row, static_cast<std::uint16_t>(cap));
}

void FeArray::emit(const Command& cmd, const RowVector*) { sink_.record(cmd); }

void FeArray::issue(const Command& cmd, const RowVector* data) {
  require_kind(cmd.kind, Backend::kFeram);
  switch (cmd.kind) {
    case CommandKind::kFeWriteRow: {
      if (cmd.cap_count != 1) throw SimError(ErrorCode::kInvalidSequence, "write needs one cap");
      require_data(cmd, data, geometry_.row_width);
      program(at(cmd.row, cmd.caps[0]), *data, cmd.row, cmd.caps[0]);
      break;
    }
    case CommandKind::kFeWriteBackRow: {
      if (cmd.cap_count != 1) throw SimError(ErrorCode::kInvalidSequence, "write-back needs one cap");
      CapRow& target = at(cmd.row, cmd.caps[0]);
      const RowVector current = target.bits;
      program(target, current, cmd.row, cmd.caps[0]);
      break;
    }
    case CommandKind::kFeActivateTba: {
      if (rsl_) throw SimError(ErrorCode::kInvalidSequence, "ACTIVATE while RSL buffer is open");
      if (cmd.cap_count != 3) throw SimError(ErrorCode::kInvalidSequence, "TBA needs three caps");
      const auto caps = cmd.cap_list();
      for (std::size_t i = 0; i < 3; ++i) {
        at(cmd.row, caps[i]);
        for (std::size_t j = i + 1; j < 3; ++j) {
          if (caps[i] == caps[j]) {
            throw SimError(ErrorCode::kDuplicateIndex, "capacitor " + std::to_string(caps[i]));
          }
        }
      }
      for (auto c : caps) prepare_read(cmd.row, c);
      auto& a = at(cmd.row, caps[0]);
      auto& b = at(cmd.row, caps[1]);
      auto& c = at(cmd.row, caps[2]);
      rsl_ = minority(a.bits, b.bits, c.bits);
      ++a.disturb_count;
      ++b.disturb_count;
      ++c.disturb_count;
      break;
    }
    case CommandKind::kFeActivateRead: {
      if (rsl_) throw SimError(ErrorCode::kInvalidSequence, "ACTIVATE while RSL buffer is open");
      if (cmd.cap_count != 1) throw SimError(ErrorCode::kInvalidSequence, "read needs one cap");
      prepare_read(cmd.row, cmd.caps[0]);
      auto& src = at(cmd.row, cmd.caps[0]);
      rsl_ = ~src.bits;
      ++src.disturb_count;
      break;
    }
    case CommandKind::kFeCopy: {
      if (!rsl_) throw SimError(ErrorCode::kInvalidSequence, "COPY with no sensed row");
      if (!cmd.has_dst) throw SimError(ErrorCode::kInvalidSequence, "COPY needs a destination");
      program(at(cmd.dst_row, cmd.dst_cap), *rsl_, cmd.dst_row, cmd.dst_cap);
      break;
    }
    case CommandKind::kFePrecharge: {
      if (!rsl_) throw SimError(ErrorCode::kInvalidSequence, "PRECHARGE with no open row");
      rsl_.reset();
      break;
    }
    default:
      throw SimError(ErrorCode::kUnknownCommandKind, std::string(to_string(cmd.kind)));
  }
  emit(cmd, data);
}

void FeArray::write_row(std::uint32_t row, std::uint16_t cap, const RowVector& data,
                        Purpose purpose, std::int32_t origin) {
  issue(sequence::fe_write(row, cap, purpose, origin), &data);
}

void FeArray::write_back_row(std::uint32_t row, std::uint16_t cap) {
  issue(sequence::fe_write_back(row, cap));
}

void FeArray::acp(std::uint32_t row, const std::array<std::uint16_t, 3>& caps,
                  std::span<const CapSlot> destinations, std::int32_t origin) {
  std::vector<Command> cmds;
  sequence::fe_acp(cmds, row, caps, destinations, origin);
  for (const auto& c : cmds) issue(c);
}

void FeArray::not_row(std::uint32_t row, std::uint16_t cap, std::span<const CapSlot> destinations,
                      std::int32_t origin) {
  std::vector<Command> cmds;
  sequence::fe_not(cmds, row, cap, destinations, origin);
  for (const auto& c : cmds) issue(c);
}

const RowVector& FeArray::peek(std::uint32_t row, std::uint16_t cap) const {
  return at(row, cap).bits;
}

FeCapState FeArray::cap_state(std::uint32_t row, std::uint16_t cap, std::size_t column) const {
  const auto& c = at(row, cap);
  return {c.bits.get(column), c.disturb_count, c.program_cycles};
}

std::uint64_t FeArray::disturb_count(std::uint32_t row, std::uint16_t cap) const {
  return at(row, cap).disturb_count;
}

std::uint64_t FeArray::program_cycles(std::uint32_t row, std::uint16_t cap) const {
  return at(row, cap).program_cycles;
}

// ---------------------------------------------------------------------------
// DramArray

DramArray::DramArray(const ArrayGeometry& geometry, CommandSink& sink)
    : geometry_(geometry), sink_(sink) {
  geometry_.validate();
  if (geometry_.total_rows <= kFirstDataRow) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "DRAM array needs more than 4 rows");
  }
  if (sink_.backend() != Backend::kDram) {
    throw SimError(ErrorCode::kInvalidSequence, "DramArray needs a dram command sink");
  }
  ensure_row(kFirstDataRow - 1);
}

void DramArray::ensure_row(std::uint32_t row) {
  if (row >= geometry_.total_rows) {
    throw SimError(ErrorCode::kInvalidAddress,
                   "row " + std::to_string(row) + " beyond " + std::to_string(geometry_.total_rows));
  }
  while (rows_.size() <= row) rows_.push_back({RowVector(geometry_.row_width), false});
}

DramArray::Row& DramArray::at(std::uint32_t row) {
  ensure_row(row);
  return rows_[row];
}

const DramArray::Row& DramArray::at(std::uint32_t row) const {
  if (row >= rows_.size()) {
    throw SimError(ErrorCode::kInvalidCellRead, "row " + std::to_string(row) + " never written");
  }
  return rows_[row];
}

// Activation senses the row destructively and the sense amplifiers restore
// it before the command completes.
RowVector DramArray::activate(std::uint32_t row) {
  Row& r = at(row);
  if (!r.valid) {
    throw ColumnError(ErrorCode::kInvalidCellRead, "row " + std::to_string(row), 0);
  }
  r.valid = false;
  RowVector sensed = r.bits;
  r.valid = true;
  return sensed;
}

void DramArray::emit(const Command& cmd, const RowVector*) { sink_.record(cmd); }

void DramArray::issue(const Command& cmd, const RowVector* data) {
  require_kind(cmd.kind, Backend::kDram);
  switch (cmd.kind) {
    case CommandKind::kDrWriteRow: {
      require_data(cmd, data, geometry_.row_width);
      Row& r = at(cmd.row);
      r.bits = *data;
      r.valid = true;
      break;
    }
    case CommandKind::kDrActivate: {
      if (buffer_) throw SimError(ErrorCode::kInvalidSequence, "ACTIVATE while a row is open");
      buffer_ = activate(cmd.row);
      break;
    }
    case CommandKind::kDrActivateTra: {
      if (buffer_) throw SimError(ErrorCode::kInvalidSequence, "ACTIVATE while a row is open");
      Row& a = at(kComputeRows[0]);
      Row& b = at(kComputeRows[1]);
      Row& c = at(kComputeRows[2]);
      for (auto r : kComputeRows) {
        if (!at(r).valid) {
          throw ColumnError(ErrorCode::kInvalidCellRead, "compute row " + std::to_string(r), 0);
        }
      }
      RowVector m = majority(a.bits, b.bits, c.bits);
      a.bits = m;
      b.bits = m;
      c.bits = m;
      buffer_ = std::move(m);
      break;
    }
    case CommandKind::kDrCopyRowClone: {
      if (!buffer_) throw SimError(ErrorCode::kInvalidSequence, "ROWCLONE with no open row");
      if (!cmd.has_dst) throw SimError(ErrorCode::kInvalidSequence, "ROWCLONE needs a destination");
      Row& dst = at(cmd.dst_row);
      dst.bits = *buffer_;
      dst.valid = true;
      break;
    }
    case CommandKind::kDrNotDcc: {
      if (!buffer_) throw SimError(ErrorCode::kInvalidSequence, "DCC copy with no open row");
      if (!cmd.has_dst) throw SimError(ErrorCode::kInvalidSequence, "DCC copy needs a destination");
      Row& dcc = at(kDccRow);
      dcc.bits = *buffer_;
      dcc.valid = true;
      Row& dst = at(cmd.dst_row);
      dst.bits = ~*buffer_;
      dst.valid = true;
      break;
    }
    case CommandKind::kDrPrecharge: {
      if (!buffer_) throw SimError(ErrorCode::kInvalidSequence, "PRECHARGE with no open row");
      buffer_.reset();
      break;
    }
    case CommandKind::kDrRefreshRow: {
      if (buffer_) throw SimError(ErrorCode::kInvalidSequence, "REFRESH while a row is open");
      if (at(cmd.row).valid) activate(cmd.row);
      break;
    }
    default:
      throw SimError(ErrorCode::kUnknownCommandKind, std::string(to_string(cmd.kind)));
  }
  emit(cmd, data);
}

void DramArray::write_row(std::uint32_t row, const RowVector& data, Purpose purpose,
                          std::int32_t origin) {
  issue(sequence::dr_write(row, purpose, origin), &data);
}

void DramArray::aap(std::uint32_t src, std::uint32_t dst, Purpose purpose, std::int32_t origin) {
  std::vector<Command> cmds;
  sequence::dr_aap(cmds, src, dst, purpose, origin);
  for (const auto& c : cmds) issue(c);
}

void DramArray::tra_aap(std::uint32_t dst, std::int32_t origin) {
  std::vector<Command> cmds;
  sequence::dr_tra_aap(cmds, dst, origin);
  for (const auto& c : cmds) issue(c);
}

void DramArray::not_dcc(std::uint32_t src, std::uint32_t dst, std::int32_t origin) {
  std::vector<Command> cmds;
  sequence::dr_not_dcc(cmds, src, dst, origin);
  for (const auto& c : cmds) issue(c);
}

const RowVector& DramArray::peek(std::uint32_t row) const { return at(row).bits; }

bool DramArray::row_valid(std::uint32_t row) const {
  return row < rows_.size() && rows_[row].valid;
}

DramCellState DramArray::cell_state(std::uint32_t row, std::size_t column) const {
  const Row& r = at(row);
  return {r.bits.get(column), r.valid};
}

// ---------------------------------------------------------------------------

namespace sequence {

namespace {

Command with_dst(Command c, std::uint32_t row, std::int16_t cap = kNoCap) {
  c.has_dst = true;
  c.dst_row = row;
  c.dst_cap = cap;
  return c;
}

void fe_copy_out(std::vector<Command>& out, std::uint32_t row,
                 std::span<const CapSlot> destinations, std::int32_t origin) {
  for (const auto& d : destinations) {
    out.push_back(with_dst(make(CommandKind::kFeCopy, row, Purpose::kResultCopy, origin), d.row,
                           static_cast<std::int16_t>(d.cap)));
  }
  out.push_back(make(CommandKind::kFePrecharge, row, Purpose::kPrecharge, origin));
}

}  // namespace

Command fe_write(std::uint32_t row, std::uint16_t cap, Purpose purpose, std::int32_t origin,
                 DataSource source) {
  Command c = make(CommandKind::kFeWriteRow, row, purpose, origin);
  c.caps[0] = static_cast<std::int16_t>(cap);
  c.cap_count = 1;
  c.source = source;
  return c;
}

Command fe_write_back(std::uint32_t row, std::uint16_t cap) {
  Command c = make(CommandKind::kFeWriteBackRow, row, Purpose::kWriteBack, kNoOrigin);
  c.caps[0] = static_cast<std::int16_t>(cap);
  c.cap_count = 1;
  return c;
}

void fe_acp(std::vector<Command>& out, std::uint32_t row, const std::array<std::uint16_t, 3>& caps,
            std::span<const CapSlot> destinations, std::int32_t origin) {
  Command act = make(CommandKind::kFeActivateTba, row, Purpose::kCompute, origin);
  for (std::size_t i = 0; i < 3; ++i) act.caps[i] = static_cast<std::int16_t>(caps[i]);
  act.cap_count = 3;
  out.push_back(act);
  fe_copy_out(out, row, destinations, origin);
}

void fe_not(std::vector<Command>& out, std::uint32_t row, std::uint16_t cap,
            std::span<const CapSlot> destinations, std::int32_t origin) {
  Command act = make(CommandKind::kFeActivateRead, row, Purpose::kCompute, origin);
  act.caps[0] = static_cast<std::int16_t>(cap);
  act.cap_count = 1;
  out.push_back(act);
  fe_copy_out(out, row, destinations, origin);
}

Command dr_write(std::uint32_t row, Purpose purpose, std::int32_t origin, DataSource source) {
  Command c = make(CommandKind::kDrWriteRow, row, purpose, origin);
  c.source = source;
  return c;
}

void dr_aap(std::vector<Command>& out, std::uint32_t src, std::uint32_t dst, Purpose purpose,
            std::int32_t origin) {
  out.push_back(make(CommandKind::kDrActivate, src, purpose, origin));
  out.push_back(with_dst(make(CommandKind::kDrCopyRowClone, src, purpose, origin), dst));
  out.push_back(make(CommandKind::kDrPrecharge, src, Purpose::kPrecharge, origin));
}

void dr_tra_aap(std::vector<Command>& out, std::uint32_t dst, std::int32_t origin) {
  const auto t0 = DramArray::kComputeRows[0];
  out.push_back(make(CommandKind::kDrActivateTra, t0, Purpose::kCompute, origin));
  out.push_back(with_dst(make(CommandKind::kDrCopyRowClone, t0, Purpose::kResultCopy, origin), dst));
  out.push_back(make(CommandKind::kDrPrecharge, t0, Purpose::kPrecharge, origin));
}

void dr_not_dcc(std::vector<Command>& out, std::uint32_t src, std::uint32_t dst,
                std::int32_t origin) {
  out.push_back(make(CommandKind::kDrActivate, src, Purpose::kCompute, origin));
  out.push_back(with_dst(make(CommandKind::kDrNotDcc, src, Purpose::kResultCopy, origin), dst));
  out.push_back(make(CommandKind::kDrPrecharge, src, Purpose::kPrecharge, origin));
}

}  // namespace sequence

// ---------------------------------------------------------------------------

RefreshCharge refresh_accounting(Backend backend, std::uint64_t total_rows,
                                 std::uint64_t elapsed_cycles, const CostParams& params) {
  if (backend == Backend::kFeram || elapsed_cycles == 0) return {};
  const double elapsed_s = static_cast<double>(elapsed_cycles) * params.cycle_time_ns * 1e-9;
  const double windows = elapsed_s / (params.refresh_interval_ms * 1e-3);
  const double refreshed_rows = windows * static_cast<double>(total_rows);
  RefreshCharge out;
  out.energy_j = refreshed_rows * params.energy_nj(CommandKind::kDrRefreshRow) * 1e-9;
  out.cycles = refreshed_rows * params.cycles_per_command;
  return out;
}

RefreshCharge refresh_accounting(const DramArray& array, const CostParams& params,
                                 std::uint64_t elapsed_cycles) {
  return refresh_accounting(Backend::kDram, array.geometry().total_rows, elapsed_cycles, params);
}

}  // namespace fepim

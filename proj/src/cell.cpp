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

#include "fepim/cell.hpp"

#include <string>

#include "fepim/error.hpp"

namespace fepim {

void CellConfig::validate() const {
  if (n_caps == 0) throw SimError(ErrorCode::kUnsupportedGeometry, "n_caps must be >= 1");
  if (disturb_budget == 0) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "disturb_budget must be >= 1");
  }
  if (endurance_limit == 0) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "endurance_limit must be >= 1");
  }
}

FeCell::FeCell(const CellConfig& config) : config_(config) {
  config_.validate();
  caps_.resize(config_.n_caps);
}

const FeCapState& FeCell::cap(std::size_t index) const {
  if (index >= caps_.size()) {
    throw SimError(ErrorCode::kIndexOutOfRange,
                   "capacitor " + std::to_string(index) + " of " + std::to_string(caps_.size()));
  }
  return caps_[index];
}

FeCapState& FeCell::cap(std::size_t index) {
  return const_cast<FeCapState&>(static_cast<const FeCell&>(*this).cap(index));
}

bool majority(bool a, bool b, bool c) noexcept { return (a && b) || (c && (a || b)); }

bool minority(bool a, bool b, bool c) noexcept { return !majority(a, b, c); }

void write_cap(FeCell& cell, std::size_t index, bool bit) {
  FeCapState& cap = cell.cap(index);
  if (cap.program_cycles >= cell.config().endurance_limit) {
    if (cell.config().endurance_policy == EndurancePolicy::kAbort) {
      throw SimError(ErrorCode::kEnduranceExceeded,
                     "capacitor " + std::to_string(index) + " reached " +
                         std::to_string(cap.program_cycles) + " program cycles");
    }
    cell.note_endurance_warning();
  }
  cap.polarization = bit;
  cap.disturb_count = 0;
  ++cap.program_cycles;
}

void write_back(FeCell& cell, std::size_t index, bool bit) { write_cap(cell, index, bit); }

namespace {

void require_budget(const FeCell& cell, std::size_t index) {
  const FeCapState& cap = cell.cap(index);
  if (cap.disturb_count >= cell.config().disturb_budget) {
    throw SimError(ErrorCode::kDisturbBudgetExhausted,
                   "capacitor " + std::to_string(index) + " read " +
                       std::to_string(cap.disturb_count) + " times since last write");
  }
}

}  // namespace

bool qnro_read(FeCell& cell, std::size_t index) {
  require_budget(cell, index);
  FeCapState& cap = cell.cap(index);
  ++cap.disturb_count;
  return !cap.polarization;
}

bool tba_sense(FeCell& cell, const std::array<std::size_t, 3>& indices) {
  for (std::size_t i = 0; i < 3; ++i) {
    cell.cap(indices[i]);
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (indices[i] == indices[j]) {
        throw SimError(ErrorCode::kDuplicateIndex, "capacitor " + std::to_string(indices[i]));
      }
    }
  }
  for (auto i : indices) require_budget(cell, i);
  for (auto i : indices) ++cell.cap(i).disturb_count;
  return minority(cell.cap(indices[0]).polarization, cell.cap(indices[1]).polarization,
                  cell.cap(indices[2]).polarization);
}

bool dram_read(DramCellState& cell) {
  if (!cell.valid) throw SimError(ErrorCode::kInvalidCellRead, "cell was read without restore");
  cell.valid = false;
  return cell.bit;
}

void dram_restore(DramCellState& cell, bool bit) {
  cell.bit = bit;
  cell.valid = true;
}

bool dram_tra(DramCellState& a, DramCellState& b, DramCellState& c) {
  const bool m = majority(dram_read(a), dram_read(b), dram_read(c));
  dram_restore(a, m);
  dram_restore(b, m);
  dram_restore(c, m);
  return m;
}

}  // namespace fepim

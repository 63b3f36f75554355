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
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fepim {

/// What happens when a capacitor is written past its endurance limit.
enum class EndurancePolicy { kAbort, kWarn };

struct CellConfig {
  std::size_t n_caps = 3;
  /// QNRO reads tolerated on one capacitor before a write-back is required.
  std::uint64_t disturb_budget = 100;
  /// Program cycles tolerated per capacitor.
  std::uint64_t endurance_limit = 1'000'000;
  EndurancePolicy endurance_policy = EndurancePolicy::kAbort;

  /// Throws kUnsupportedGeometry on a zero field.
  void validate() const;
};

/// One ferroelectric capacitor. `polarization` true is positive remanent
/// polarization (logical 1).
struct FeCapState {
  bool polarization = false;
  std::uint64_t disturb_count = 0;
  std::uint64_t program_cycles = 0;

  friend bool operator==(const FeCapState&, const FeCapState&) = default;
};

/// A 2T-nC cell: n capacitors behind one write and one read transistor.
class FeCell {
 public:
  explicit FeCell(const CellConfig& config = {});

  std::size_t size() const noexcept { return caps_.size(); }
  const CellConfig& config() const noexcept { return config_; }
  const FeCapState& cap(std::size_t index) const;
  FeCapState& cap(std::size_t index);

  /// Writes that went past the endurance limit under EndurancePolicy::kWarn.
  std::uint64_t endurance_warnings() const noexcept { return endurance_warnings_; }
  void note_endurance_warning() noexcept { ++endurance_warnings_; }

 private:
  CellConfig config_;
  std::vector<FeCapState> caps_;
  std::uint64_t endurance_warnings_ = 0;
};

bool majority(bool a, bool b, bool c) noexcept;
bool minority(bool a, bool b, bool c) noexcept;

/// Programs one capacitor through the write transistor.
void write_cap(FeCell& cell, std::size_t index, bool bit);

/// Same state contract as write_cap; kept separate so traffic caused by the
/// disturb budget can be attributed on its own.
void write_back(FeCell& cell, std::size_t index, bool bit);

/// Quasi-nondestructive read: returns the inverse of the stored bit and
/// charges one unit of read disturb.
bool qnro_read(FeCell& cell, std::size_t index);

/// Triple-bit activation over three distinct capacitors. The sensed value is
/// MINORITY of the stored bits; each participant is charged one disturb unit.
bool tba_sense(FeCell& cell, const std::array<std::size_t, 3>& indices);

/// 1T-1C DRAM cell. Reads are destructive until restored.
struct DramCellState {
  bool bit = false;
  bool valid = true;

  friend bool operator==(const DramCellState&, const DramCellState&) = default;
};

bool dram_read(DramCellState& cell);
void dram_restore(DramCellState& cell, bool bit);

/// Triple-row activation over three cells on one bitline: all three settle to
/// the majority value, which is also returned.
bool dram_tra(DramCellState& a, DramCellState& b, DramCellState& c);

}  // namespace fepim

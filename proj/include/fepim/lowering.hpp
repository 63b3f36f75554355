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

#include <cstdint>
#include <string>
#include <vector>

#include "fepim/command.hpp"
#include "fepim/engine.hpp"
#include "fepim/program.hpp"

namespace fepim {

/// Physical home of a value: an FeRAM (row, cap) slot, or a DRAM row with
/// `cap == kNoCap`.
struct Location {
  std::uint32_t row = 0;
  std::int16_t cap = kNoCap;

  friend bool operator==(const Location&, const Location&) = default;
};

struct PlacedVariable {
  std::string name;
  std::vector<Location> locations;
};

struct ScratchStats {
  std::uint32_t rows_used = 0;       // highest row index touched + 1
  std::uint32_t peak_live_slots = 0; // FeRAM caps or DRAM rows holding live values
  std::uint32_t control_rows = 0;    // rows whose control bit is written once in setup
  bool all_released = false;
};

/// A program lowered onto one backend.
///
/// `setup` runs once per array (control bits and constant rows); `body` runs
/// once per data instance. Row writes name their data through
/// Command::source, which indexes `inputs`.
struct LoweredPlan {
  Backend backend = Backend::kFeram;
  ArrayGeometry geometry;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// Where each output can be read after the body has run.
  std::vector<Location> output_locations;
  std::vector<Command> setup;
  std::vector<Command> body;
  std::vector<PlacedVariable> placement;
  ScratchStats scratch;
};

/// FeRAM lowering. Gates run as TBA in a unit cell whose third capacitor holds
/// the control bit (0 for NAND, 1 for NOR); results are copied straight into
/// the capacitors where their consumers will read them, so no operand is ever
/// relocated. NOT uses a single-capacitor QNRO read.
LoweredPlan lower_feram(const BitProgram& program, const ArrayGeometry& geometry);

/// DRAM lowering. AND/OR/MAJ copy their three operands into the compute rows
/// and run one TRA; NOT goes through the dual-contact row.
LoweredPlan lower_dram(const BitProgram& program, const ArrayGeometry& geometry);

LoweredPlan lower(const BitProgram& program, const ArrayGeometry& geometry, Backend backend);

}  // namespace fepim

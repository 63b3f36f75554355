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
#include <memory>
#include <span>
#include <vector>

#include "fepim/cell.hpp"
#include "fepim/cost.hpp"
#include "fepim/engine.hpp"
#include "fepim/lowering.hpp"
#include "fepim/program.hpp"

namespace fepim {

struct ExecOptions {
  CellConfig cell;
  bool record_trace = true;
  /// Insert FE_WRITE_BACK_ROW when a capacitor reaches its disturb budget.
  bool auto_write_back = true;
};

/// Executes a lowered plan on a fresh array. The setup commands run once at
/// construction; each run() executes the body for one set of input rows.
class PlanRunner {
 public:
  PlanRunner(const LoweredPlan& plan, const CostParams& params, const ExecOptions& options = {});
  ~PlanRunner();

  PlanRunner(const PlanRunner&) = delete;
  PlanRunner& operator=(const PlanRunner&) = delete;

  /// `inputs` follows plan.inputs order. Returns outputs in plan.outputs order.
  std::vector<RowVector> run(std::span<const RowVector* const> inputs);

  /// Ledger with refresh applied for everything executed so far.
  EnergyLedger ledger() const;
  const std::vector<Command>& trace() const { return sink_.trace(); }
  std::uint64_t endurance_warnings() const;

  const FeArray* feram() const { return fe_.get(); }
  const DramArray* dram() const { return dr_.get(); }

 private:
  void issue(const Command& cmd, std::span<const RowVector* const> inputs);

  const LoweredPlan& plan_;
  CommandSink sink_;
  std::unique_ptr<FeArray> fe_;
  std::unique_ptr<DramArray> dr_;
  RowVector zeros_;
  RowVector ones_;
};

struct ExecResult {
  RowMap outputs;
  EnergyLedger ledger;
  std::vector<Command> trace;
  std::uint64_t endurance_warnings = 0;
};

/// One-shot execution of a plan. Throws kMissingInput if an input is absent
/// and kWidthMismatch if a row does not match the plan's row width.
ExecResult execute(const LoweredPlan& plan, const RowMap& inputs, const CostParams& params = {},
                   const ExecOptions& options = {});

}  // namespace fepim

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

#include "fepim/executor.hpp"

namespace fepim {

PlanRunner::PlanRunner(const LoweredPlan& plan, const CostParams& params,
                       const ExecOptions& options)
    : plan_(plan),
      sink_(plan.backend, params, options.record_trace),
      zeros_(plan.geometry.row_width, false),
      ones_(plan.geometry.row_width, true) {
  if (plan.backend == Backend::kFeram) {
    fe_ = std::make_unique<FeArray>(plan.geometry, options.cell, sink_);
    fe_->set_auto_write_back(options.auto_write_back);
  } else {
    dr_ = std::make_unique<DramArray>(plan.geometry, sink_);
  }
  for (const auto& cmd : plan.setup) issue(cmd, {});
}

PlanRunner::~PlanRunner() = default;

void PlanRunner::issue(const Command& cmd, std::span<const RowVector* const> inputs) {
  const RowVector* data = nullptr;
  switch (cmd.source.kind) {
    case DataSource::Kind::kNone: break;
    case DataSource::Kind::kConst0: data = &zeros_; break;
    case DataSource::Kind::kConst1: data = &ones_; break;
    case DataSource::Kind::kInput:
      if (cmd.source.input >= inputs.size() || inputs[cmd.source.input] == nullptr) {
        throw SimError(ErrorCode::kMissingInput, "input #" + std::to_string(cmd.source.input));
      }
      data = inputs[cmd.source.input];
      break;
  }
  if (fe_) {
    fe_->issue(cmd, data);
  } else {
    dr_->issue(cmd, data);
  }
}

std::vector<RowVector> PlanRunner::run(std::span<const RowVector* const> inputs) {
  if (inputs.size() != plan_.inputs.size()) {
    throw SimError(ErrorCode::kMissingInput, "plan takes " + std::to_string(plan_.inputs.size()) +
                                                 " inputs, got " + std::to_string(inputs.size()));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] == nullptr) throw SimError(ErrorCode::kMissingInput, plan_.inputs[i]);
    if (inputs[i]->width() != plan_.geometry.row_width) {
      throw SimError(ErrorCode::kWidthMismatch,
                     plan_.inputs[i] + " has width " + std::to_string(inputs[i]->width()));
    }
  }
  for (const auto& cmd : plan_.body) issue(cmd, inputs);

  std::vector<RowVector> out;
  out.reserve(plan_.output_locations.size());
  for (const auto& loc : plan_.output_locations) {
    out.push_back(fe_ ? fe_->peek(loc.row, static_cast<std::uint16_t>(loc.cap))
                      : dr_->peek(loc.row));
  }
  return out;
}

EnergyLedger PlanRunner::ledger() const {
  EnergyLedger l = sink_.ledger();
  finalize(l, sink_.params(), plan_.geometry.total_rows);
  return l;
}

std::uint64_t PlanRunner::endurance_warnings() const {
  return fe_ ? fe_->endurance_warnings() : 0;
}

ExecResult execute(const LoweredPlan& plan, const RowMap& inputs, const CostParams& params,
                   const ExecOptions& options) {
  std::vector<const RowVector*> rows;
  for (const auto& name : plan.inputs) {
    auto it = inputs.find(name);
    if (it == inputs.end()) throw SimError(ErrorCode::kMissingInput, name);
    rows.push_back(&it->second);
  }
  PlanRunner runner(plan, params, options);
  auto values = runner.run(rows);
  ExecResult r;
  for (std::size_t i = 0; i < plan.outputs.size(); ++i) {
    r.outputs.emplace(plan.outputs[i], std::move(values[i]));
  }
  r.ledger = runner.ledger();
  r.trace = runner.trace();
  r.endurance_warnings = runner.endurance_warnings();
  return r;
}

}  // namespace fepim

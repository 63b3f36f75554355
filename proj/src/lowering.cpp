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

#include "fepim/lowering.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace fepim {

namespace {

// ---------------------------------------------------------------------------
// Value graph shared by both lowerings. Program ops are first expanded into
// backend primitives over SSA values, then scheduled in program order.

enum class Prim { kNot, kNand, kNor, kMin, kMaj, kCopy, kConst };

struct Use {
  std::size_t gate;
  std::size_t pos;
};

struct Value {
  enum class Source { kInput, kConst, kGate } source = Source::kGate;
  std::uint32_t input = 0;
  bool bit = false;
  std::string name;
  std::optional<std::size_t> output;
  std::vector<Use> uses;
};

struct Gate {
  Prim prim = Prim::kNot;
  std::vector<std::size_t> operands;
  std::size_t result = 0;
  std::int32_t origin = kNoOrigin;
  bool bit = false;
};

class Graph {
 public:
  std::vector<Value> values;
  std::vector<Gate> gates;

  std::size_t add_input(const std::string& name, std::uint32_t index) {
    Value v;
    v.source = Value::Source::kInput;
    v.input = index;
    v.name = name;
    values.push_back(std::move(v));
    return values.size() - 1;
  }

  std::size_t constant(bool bit) {
    auto& slot = consts_[bit ? 1 : 0];
    if (!slot) {
      Value v;
      v.source = Value::Source::kConst;
      v.bit = bit;
      values.push_back(std::move(v));
      slot = values.size() - 1;
    }
    return *slot;
  }

  std::size_t gate(Prim prim, std::vector<std::size_t> operands, std::int32_t origin,
                   bool bit = false) {
    values.push_back(Value{});
    Gate g;
    g.prim = prim;
    g.operands = std::move(operands);
    g.result = values.size() - 1;
    g.origin = origin;
    g.bit = bit;
    gates.push_back(std::move(g));
    return gates.back().result;
  }

  void link_uses() {
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
      for (std::size_t pos = 0; pos < gates[gi].operands.size(); ++pos) {
        values[gates[gi].operands[pos]].uses.push_back({gi, pos});
      }
    }
  }

 private:
  std::optional<std::size_t> consts_[2];
};

using Expander = std::size_t (*)(Graph&, OpCode, const std::vector<std::size_t>&, std::int32_t,
                                 bool);

std::size_t expand_feram(Graph& g, OpCode op, const std::vector<std::size_t>& a, std::int32_t o,
                         bool bit) {
  auto nand = [&](std::size_t x, std::size_t y) { return g.gate(Prim::kNand, {x, y}, o); };
  auto inv = [&](std::size_t x) { return g.gate(Prim::kNot, {x}, o); };
  auto xor4 = [&](std::size_t x, std::size_t y) {
    const auto t = nand(x, y);
    return nand(nand(x, t), nand(y, t));
  };
  switch (op) {
    case OpCode::kNot: return inv(a[0]);
    case OpCode::kNand: return nand(a[0], a[1]);
    case OpCode::kNor: return g.gate(Prim::kNor, {a[0], a[1]}, o);
    case OpCode::kAnd: return inv(nand(a[0], a[1]));
    case OpCode::kOr: return inv(g.gate(Prim::kNor, {a[0], a[1]}, o));
    case OpCode::kXor: return xor4(a[0], a[1]);
    case OpCode::kXnor: return inv(xor4(a[0], a[1]));
    case OpCode::kCopy: return inv(inv(a[0]));
    case OpCode::kConst: return g.gate(Prim::kConst, {}, o, bit);
    case OpCode::kMaj: return inv(g.gate(Prim::kMin, {a[0], a[1], a[2]}, o));
  }
  throw SimError(ErrorCode::kInvalidProgram, "unknown op");
}

std::size_t expand_dram(Graph& g, OpCode op, const std::vector<std::size_t>& a, std::int32_t o,
                        bool bit) {
  auto maj = [&](std::size_t x, std::size_t y, std::size_t z) {
    return g.gate(Prim::kMaj, {x, y, z}, o);
  };
  auto and2 = [&](std::size_t x, std::size_t y) { return maj(x, y, g.constant(false)); };
  auto or2 = [&](std::size_t x, std::size_t y) { return maj(x, y, g.constant(true)); };
  auto inv = [&](std::size_t x) { return g.gate(Prim::kNot, {x}, o); };
  auto xor_ = [&](std::size_t x, std::size_t y) {
    const auto nx = inv(x);
    const auto ny = inv(y);
    return or2(and2(x, ny), and2(nx, y));
  };
  switch (op) {
    case OpCode::kNot: return inv(a[0]);
    case OpCode::kAnd: return and2(a[0], a[1]);
    case OpCode::kOr: return or2(a[0], a[1]);
    case OpCode::kNand: return inv(and2(a[0], a[1]));
    case OpCode::kNor: return inv(or2(a[0], a[1]));
    case OpCode::kXor: return xor_(a[0], a[1]);
    case OpCode::kXnor: return inv(xor_(a[0], a[1]));
    case OpCode::kCopy: return g.gate(Prim::kCopy, {a[0]}, o);
    case OpCode::kConst: return g.gate(Prim::kConst, {}, o, bit);
    case OpCode::kMaj: return maj(a[0], a[1], a[2]);
  }
  throw SimError(ErrorCode::kInvalidProgram, "unknown op");
}

Graph build_graph(const BitProgram& program, Expander expand, std::vector<std::string>& inputs,
                  std::vector<std::string>& outputs) {
  validate(program);
  Graph g;
  std::map<std::string, std::size_t, std::less<>> env;
  inputs = program.inputs();
  outputs = program.outputs();
  for (std::uint32_t i = 0; i < inputs.size(); ++i) env[inputs[i]] = g.add_input(inputs[i], i);
  for (const auto& d : program.decls) {
    if (d.role == Role::kConst0) env[d.name] = g.constant(false);
    if (d.role == Role::kConst1) env[d.name] = g.constant(true);
  }
  for (std::size_t i = 0; i < program.ops.size(); ++i) {
    const Op& op = program.ops[i];
    std::vector<std::size_t> args;
    if (op.op != OpCode::kConst) {
      for (const auto& a : op.args) args.push_back(env.at(a));
    }
    const auto v = expand(g, op.op, args, static_cast<std::int32_t>(i),
                          op.op == OpCode::kConst && op.args[0] == "1");
    g.values[v].name = op.result;
    env[op.result] = v;
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) g.values[env.at(outputs[i])].output = i;
  g.link_uses();
  return g;
}

DataSource source_of(const Value& v) {
  return v.source == Value::Source::kInput ? DataSource::from_input(v.input)
                                           : DataSource::constant(v.bit);
}

void fill_placement(LoweredPlan& plan, const Graph& g,
                    const std::vector<std::vector<Location>>& homes) {
  for (std::size_t v = 0; v < g.values.size(); ++v) {
    if (g.values[v].name.empty() || homes[v].empty()) continue;
    plan.placement.push_back({g.values[v].name, homes[v]});
  }
}

// ---------------------------------------------------------------------------
// FeRAM

constexpr std::uint16_t kControlCap = 2;

class FeramScheduler {
 public:
  FeramScheduler(const Graph& graph, LoweredPlan& plan)
      : g_(graph),
        plan_(plan),
        site_of_(graph.gates.size()),
        not_src_(graph.gates.size()),
        homes_(graph.values.size()),
        output_slot_(graph.values.size()) {}

  void run() {
    for (std::size_t gi = 0; gi < g_.gates.size(); ++gi) fire(gi);
    plan_.output_locations.resize(plan_.outputs.size());
    for (std::size_t v = 0; v < g_.values.size(); ++v) {
      if (!g_.values[v].output) continue;
      const CapSlot s = *output_slot_[v];
      plan_.output_locations[*g_.values[v].output] = {s.row, static_cast<std::int16_t>(s.cap)};
      release_generic(s);
    }
    fill_placement(plan_, g_, homes_);
    plan_.scratch.rows_used = next_row_;
    plan_.scratch.peak_live_slots = peak_live_;
    plan_.scratch.all_released = live_ == 0;
  }

 private:
  enum SiteKind { kNandSite, kNorSite, kMinSite };

  static SiteKind site_kind(Prim p) {
    return p == Prim::kNand ? kNandSite : p == Prim::kNor ? kNorSite : kMinSite;
  }

  std::uint32_t new_row() {
    if (next_row_ >= plan_.geometry.total_rows) {
      throw SimError(ErrorCode::kCapacityExceeded,
                     "FeRAM plan needs more than " + std::to_string(plan_.geometry.total_rows) +
                         " rows");
    }
    return next_row_++;
  }

  std::uint32_t take_site(SiteKind kind) {
    auto& pool = free_sites_[kind];
    if (!pool.empty()) {
      const auto row = pool.back();
      pool.pop_back();
      return row;
    }
    const auto row = new_row();
    if (kind != kMinSite) {
      plan_.setup.push_back(sequence::fe_write(row, kControlCap, Purpose::kControl, kNoOrigin,
                                               DataSource::constant(kind == kNorSite)));
      ++plan_.scratch.control_rows;
    }
    return row;
  }

  CapSlot take_generic() {
    if (free_generic_.empty()) {
      const auto row = new_row();
      for (auto c = plan_.geometry.n_caps; c-- > 0;) {
        free_generic_.push_back({row, static_cast<std::uint16_t>(c)});
      }
    }
    const CapSlot s = free_generic_.back();
    free_generic_.pop_back();
    add_live(1);
    return s;
  }

  void release_generic(CapSlot s) {
    free_generic_.push_back(s);
    --live_;
  }

  void add_live(std::uint32_t n) {
    live_ += n;
    peak_live_ = std::max(peak_live_, live_);
  }

  std::uint32_t ensure_site(std::size_t gi) {
    if (!site_of_[gi]) site_of_[gi] = take_site(site_kind(g_.gates[gi].prim));
    return *site_of_[gi];
  }

  /// Slot that use `u` reads its operand from; allocated on first request.
  CapSlot slot_for(const Use& u) {
    const Gate& consumer = g_.gates[u.gate];
    if (consumer.prim == Prim::kNot) {
      if (!not_src_[u.gate]) not_src_[u.gate] = take_generic();
      return *not_src_[u.gate];
    }
    add_live(1);
    return {ensure_site(u.gate), static_cast<std::uint16_t>(u.pos)};
  }

  std::vector<CapSlot> destinations(std::size_t v, bool& dead) {
    std::vector<CapSlot> out;
    for (const auto& u : g_.values[v].uses) out.push_back(slot_for(u));
    if (g_.values[v].output) {
      output_slot_[v] = take_generic();
      out.push_back(*output_slot_[v]);
    }
    dead = out.empty();
    if (dead) out.push_back(take_generic());
    for (const auto& s : out) homes_[v].push_back({s.row, static_cast<std::int16_t>(s.cap)});
    return out;
  }

  void deliver_loads(std::size_t gi) {
    const Gate& gate = g_.gates[gi];
    for (std::size_t pos = 0; pos < gate.operands.size(); ++pos) {
      const Value& v = g_.values[gate.operands[pos]];
      if (v.source == Value::Source::kGate) continue;
      const CapSlot s = slot_for({gi, pos});
      plan_.body.push_back(sequence::fe_write(s.row, s.cap, Purpose::kLoad, gate.origin,
                                              source_of(v)));
    }
  }

  void fire(std::size_t gi) {
    const Gate& gate = g_.gates[gi];
    deliver_loads(gi);
    bool dead = false;
    const auto dests = destinations(gate.result, dead);
    switch (gate.prim) {
      case Prim::kNand:
      case Prim::kNor:
      case Prim::kMin: {
        const auto row = *site_of_[gi];
        sequence::fe_acp(plan_.body, row, {0, 1, kControlCap}, dests, gate.origin);
        free_sites_[site_kind(gate.prim)].push_back(row);
        live_ -= static_cast<std::uint32_t>(gate.operands.size());
        break;
      }
      case Prim::kNot: {
        const CapSlot src = *not_src_[gi];
        sequence::fe_not(plan_.body, src.row, src.cap, dests, gate.origin);
        release_generic(src);
        break;
      }
      case Prim::kConst:
        for (const auto& d : dests) {
          plan_.body.push_back(sequence::fe_write(d.row, d.cap, Purpose::kLoad, gate.origin,
                                                  DataSource::constant(gate.bit)));
        }
        break;
      default:
        throw SimError(ErrorCode::kInvalidProgram, "primitive not available on FeRAM");
    }
    if (dead) release_generic(dests.front());
  }

  const Graph& g_;
  LoweredPlan& plan_;
  std::vector<std::optional<std::uint32_t>> site_of_;
  std::vector<std::optional<CapSlot>> not_src_;
  std::vector<std::vector<Location>> homes_;
  std::vector<std::optional<CapSlot>> output_slot_;
  std::vector<std::uint32_t> free_sites_[3];
  std::vector<CapSlot> free_generic_;
  std::uint32_t next_row_ = 0;
  std::uint32_t live_ = 0;
  std::uint32_t peak_live_ = 0;
};

// ---------------------------------------------------------------------------
// DRAM

class DramScheduler {
 public:
  DramScheduler(const Graph& graph, LoweredPlan& plan)
      : g_(graph), plan_(plan), row_of_(graph.values.size()), homes_(graph.values.size()) {
    for (const auto& v : graph.values) remaining_.push_back(v.uses.size());
  }

  void run() {
    // Constant rows are written once in setup, so they get rows the body
    // never recycles.
    for (std::size_t v = 0; v < g_.values.size(); ++v) {
      const Value& val = g_.values[v];
      if (val.source != Value::Source::kConst || val.uses.empty()) continue;
      const auto row = take_row();
      --live_;
      row_of_[v] = row;
      homes_[v].push_back({row, kNoCap});
      plan_.setup.push_back(
          sequence::dr_write(row, Purpose::kControl, kNoOrigin, DataSource::constant(val.bit)));
      ++plan_.scratch.control_rows;
    }
    for (std::size_t gi = 0; gi < g_.gates.size(); ++gi) fire(gi);
    plan_.output_locations.resize(plan_.outputs.size());
    for (std::size_t v = 0; v < g_.values.size(); ++v) {
      if (!g_.values[v].output) continue;
      plan_.output_locations[*g_.values[v].output] = {*row_of_[v], kNoCap};
      release(*row_of_[v]);
    }
    fill_placement(plan_, g_, homes_);
    plan_.scratch.rows_used = next_row_;
    plan_.scratch.peak_live_slots = peak_live_;
    plan_.scratch.all_released = live_ == 0;
  }

 private:
  std::uint32_t take_row() {
    std::uint32_t row;
    if (!free_rows_.empty()) {
      row = free_rows_.back();
      free_rows_.pop_back();
    } else {
      if (next_row_ >= plan_.geometry.total_rows) {
        throw SimError(ErrorCode::kCapacityExceeded,
                       "DRAM plan needs more than " + std::to_string(plan_.geometry.total_rows) +
                           " rows");
      }
      row = next_row_++;
    }
    ++live_;
    peak_live_ = std::max(peak_live_, live_);
    return row;
  }

  void release(std::uint32_t row) {
    free_rows_.push_back(row);
    --live_;
  }

  std::uint32_t operand_row(std::size_t v, std::int32_t origin) {
    if (row_of_[v]) return *row_of_[v];
    const Value& val = g_.values[v];
    const auto row = take_row();
    row_of_[v] = row;
    homes_[v].push_back({row, kNoCap});
    plan_.body.push_back(sequence::dr_write(row, Purpose::kLoad, origin, source_of(val)));
    return row;
  }

  void consumed(std::size_t v) {
    if (--remaining_[v] != 0) return;
    const Value& val = g_.values[v];
    if (val.source == Value::Source::kConst || val.output) return;
    release(*row_of_[v]);
  }

  void fire(std::size_t gi) {
    const Gate& gate = g_.gates[gi];
    std::vector<std::uint32_t> src;
    for (auto v : gate.operands) src.push_back(operand_row(v, gate.origin));
    const auto dst = take_row();
    row_of_[gate.result] = dst;
    homes_[gate.result].push_back({dst, kNoCap});
    switch (gate.prim) {
      case Prim::kMaj:
        for (std::size_t i = 0; i < 3; ++i) {
          sequence::dr_aap(plan_.body, src[i], DramArray::kComputeRows[i], Purpose::kOperandCopy,
                           gate.origin);
        }
        sequence::dr_tra_aap(plan_.body, dst, gate.origin);
        break;
      case Prim::kNot:
        sequence::dr_not_dcc(plan_.body, src[0], dst, gate.origin);
        break;
      case Prim::kCopy:
        sequence::dr_aap(plan_.body, src[0], dst, Purpose::kCompute, gate.origin);
        break;
      case Prim::kConst:
        plan_.body.push_back(sequence::dr_write(dst, Purpose::kLoad, gate.origin,
                                                DataSource::constant(gate.bit)));
        break;
      default:
        throw SimError(ErrorCode::kInvalidProgram, "primitive not available on DRAM");
    }
    for (auto v : gate.operands) consumed(v);
    const Value& result = g_.values[gate.result];
    if (result.uses.empty() && !result.output) release(dst);
  }

  const Graph& g_;
  LoweredPlan& plan_;
  std::vector<std::optional<std::uint32_t>> row_of_;
  std::vector<std::vector<Location>> homes_;
  std::vector<std::size_t> remaining_;
  std::vector<std::uint32_t> free_rows_;
  std::uint32_t next_row_ = DramArray::kFirstDataRow;
  std::uint32_t live_ = 0;
  std::uint32_t peak_live_ = 0;
};

}  // namespace

LoweredPlan lower_feram(const BitProgram& program, const ArrayGeometry& geometry) {
  geometry.validate();
  if (geometry.n_caps < 3) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "FeRAM logic needs at least 3 caps per cell");
  }
  LoweredPlan plan;
  plan.backend = Backend::kFeram;
  plan.geometry = geometry;
  const Graph g = build_graph(program, expand_feram, plan.inputs, plan.outputs);
  FeramScheduler(g, plan).run();
  return plan;
}

LoweredPlan lower_dram(const BitProgram& program, const ArrayGeometry& geometry) {
  geometry.validate();
  LoweredPlan plan;
  plan.backend = Backend::kDram;
  plan.geometry = geometry;
  const Graph g = build_graph(program, expand_dram, plan.inputs, plan.outputs);
  DramScheduler(g, plan).run();
  return plan;
}

LoweredPlan lower(const BitProgram& program, const ArrayGeometry& geometry, Backend backend) {
  return backend == Backend::kFeram ? lower_feram(program, geometry)
                                    : lower_dram(program, geometry);
}

}  // namespace fepim

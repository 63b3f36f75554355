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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fepim/cell.hpp"
#include "fepim/cost.hpp"
#include "fepim/engine.hpp"
#include "fepim/lowering.hpp"
#include "fepim/program.hpp"

namespace fepim {

enum class Workload {
  kCrc8,
  kXorCipher,
  kSetUnion,
  kSetIntersection,
  kSetDifference,
  kMaskedInit,
  kBitmapQuery,
  kBnnInference,
};

inline constexpr std::array<Workload, 8> kAllWorkloads = {
    Workload::kCrc8,          Workload::kXorCipher,  Workload::kSetUnion,
    Workload::kSetIntersection, Workload::kSetDifference, Workload::kMaskedInit,
    Workload::kBitmapQuery,   Workload::kBnnInference,
};

std::string_view to_string(Workload w);
std::optional<Workload> parse_workload(std::string_view name);

inline constexpr std::uint64_t kDefaultWorkloadBytes = 16ULL << 20;

struct WorkloadParams {
  // crc8
  std::uint8_t crc_poly = 0x07;
  std::uint8_t crc_init = 0x00;
  std::uint32_t message_bytes = 8;
  // bitmap_query: b1..bk joined by & | ! and parentheses
  std::string predicate = "(b1 & b2) | (b3 & !b4)";
  // bnn_inference
  std::uint32_t bnn_inputs = 64;
  std::uint32_t bnn_neurons = 16;
  std::uint32_t bnn_threshold = 32;  // neuron fires when popcount > threshold
};

/// Reads the knobs that apply to `w`; any other key is kUnsupportedParams.
WorkloadParams params_from_json(Workload w, const nlohmann::json& doc);
nlohmann::ordered_json params_to_json(Workload w, const WorkloadParams& params);

struct WorkloadSpec {
  Workload workload = Workload::kCrc8;
  std::uint64_t size_bytes = kDefaultWorkloadBytes;
  std::uint64_t seed = 1;
  WorkloadParams params;
};

/// Bitmap predicate syntax tree.
struct Predicate {
  enum class Kind { kVar, kNot, kAnd, kOr } kind = Kind::kVar;
  std::uint32_t index = 0;  // 1-based bitmap number for kVar
  std::vector<Predicate> children;

  bool eval(const std::vector<bool>& bitmaps) const;  // bitmaps[i] is b(i+1)
  std::uint32_t max_index() const;
};

/// Throws kUnsupportedParams on a syntax error.
Predicate parse_predicate(std::string_view text);

/// Bit-sliced dataset: column c of instance i holds record i*row_width + c,
/// one record bit per data row. Broadcast rows (cipher key, BNN weights) are
/// the same for every instance. Columns past the last record are zero.
struct Dataset {
  std::size_t row_width = 0;
  std::uint64_t records = 0;
  std::uint64_t instances = 0;
  std::vector<std::string> data_inputs;
  std::vector<std::string> broadcast_inputs;
  std::vector<RowVector> broadcast;
  std::vector<std::vector<RowVector>> data;  // [instance][data input]

  /// Row pointers in program input order: data inputs, then broadcast.
  std::vector<const RowVector*> instance_inputs(std::uint64_t instance) const;
};

/// Data rows each record contributes to size_bytes.
std::size_t record_rows(const WorkloadSpec& spec);

/// Deterministic dataset. Throws kSizeNotAligned unless size_bytes is a
/// multiple of row_width / 8.
Dataset generate(const WorkloadSpec& spec, std::size_t row_width);

/// Expected outputs of one instance, computed record by record with plain
/// scalar code.
RowMap oracle(const WorkloadSpec& spec, const Dataset& data, std::uint64_t instance);

/// Scalar reference CRC-8 (MSB first, no reflection, no final xor).
std::uint8_t crc8_reference(const std::uint8_t* bytes, std::size_t n, std::uint8_t poly,
                            std::uint8_t init);

BitProgram build_program(const WorkloadSpec& spec);

struct WorkloadReport {
  std::string name;
  Backend backend = Backend::kFeram;
  std::uint64_t size_bytes = 0;
  std::uint64_t seed = 0;
  std::uint64_t records = 0;
  std::uint64_t instances = 0;
  bool oracle_match = false;
  EnergyLedger ledger;
  /// RowDigest over every output row, instance by instance, outputs in
  /// program order.
  std::uint64_t output_digest = 0;
  std::uint64_t oracle_digest = 0;
  std::uint64_t endurance_warnings = 0;
};

struct RunSettings {
  ArrayGeometry geometry;
  CellConfig cell;
  CostParams cost;
};

/// Generate, build, lower, execute every instance, and check against the
/// oracle.
WorkloadReport run(const WorkloadSpec& spec, Backend backend, const RunSettings& settings = {});

}  // namespace fepim

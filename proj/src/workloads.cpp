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

#include "fepim/workloads.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>

#include "fepim/executor.hpp"
#include "fepim/prng.hpp"

namespace fepim {

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::kCrc8: return "crc8";
    case Workload::kXorCipher: return "xor_cipher";
    case Workload::kSetUnion: return "set_union";
    case Workload::kSetIntersection: return "set_intersection";
    case Workload::kSetDifference: return "set_difference";
    case Workload::kMaskedInit: return "masked_init";
    case Workload::kBitmapQuery: return "bitmap_query";
    case Workload::kBnnInference: return "bnn_inference";
  }
  return "unknown";
}

std::optional<Workload> parse_workload(std::string_view name) {
  for (auto w : kAllWorkloads) {
    if (to_string(w) == name) return w;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void unsupported(const std::string& msg) {
  throw SimError(ErrorCode::kUnsupportedParams, msg);
}

template <typename T>
T bounded(const nlohmann::json& v, const std::string& key, std::uint64_t lo, std::uint64_t hi) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    unsupported(key + " must be a non-negative integer");
  }
  const auto x = v.get<std::uint64_t>();
  if (x < lo || x > hi) {
    unsupported(key + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<T>(x);
}

/// Same bounds as params_from_json, for specs built in code.
void check_params(const WorkloadSpec& spec) {
  const auto& p = spec.params;
  auto in = [](std::uint64_t x, const char* key, std::uint64_t lo, std::uint64_t hi) {
    if (x < lo || x > hi) {
      unsupported(std::string(key) + " must be in [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
    }
  };
  switch (spec.workload) {
    case Workload::kCrc8: in(p.message_bytes, "message_bytes", 1, 1024); break;
    case Workload::kBitmapQuery: parse_predicate(p.predicate); break;
    case Workload::kBnnInference:
      in(p.bnn_inputs, "bnn_inputs", 1, 4096);
      in(p.bnn_neurons, "bnn_neurons", 1, 4096);
      in(p.bnn_threshold, "bnn_threshold", 0, 1u << 20);
      break;
    default: break;
  }
}

}  // namespace

WorkloadParams params_from_json(Workload w, const nlohmann::json& doc) {
  WorkloadParams p;
  if (doc.is_null()) return p;
  if (!doc.is_object()) unsupported("params must be an object");
  for (const auto& [key, v] : doc.items()) {
    if (w == Workload::kCrc8 && key == "crc_poly") {
      p.crc_poly = bounded<std::uint8_t>(v, key, 0, 0xFF);
    } else if (w == Workload::kCrc8 && key == "crc_init") {
      p.crc_init = bounded<std::uint8_t>(v, key, 0, 0xFF);
    } else if (w == Workload::kCrc8 && key == "message_bytes") {
      p.message_bytes = bounded<std::uint32_t>(v, key, 1, 1024);
    } else if (w == Workload::kBitmapQuery && key == "predicate") {
      if (!v.is_string()) unsupported("predicate must be a string");
      p.predicate = v.get<std::string>();
      parse_predicate(p.predicate);
    } else if (w == Workload::kBnnInference && key == "bnn_inputs") {
      p.bnn_inputs = bounded<std::uint32_t>(v, key, 1, 4096);
    } else if (w == Workload::kBnnInference && key == "bnn_neurons") {
      p.bnn_neurons = bounded<std::uint32_t>(v, key, 1, 4096);
    } else if (w == Workload::kBnnInference && key == "bnn_threshold") {
      p.bnn_threshold = bounded<std::uint32_t>(v, key, 0, 1u << 20);
    } else {
      unsupported("unknown parameter '" + key + "' for " + std::string(to_string(w)));
    }
  }
  return p;
}

nlohmann::ordered_json params_to_json(Workload w, const WorkloadParams& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  switch (w) {
    case Workload::kCrc8:
      j["crc_poly"] = p.crc_poly;
      j["crc_init"] = p.crc_init;
      j["message_bytes"] = p.message_bytes;
      break;
    case Workload::kBitmapQuery: j["predicate"] = p.predicate; break;
    case Workload::kBnnInference:
      j["bnn_inputs"] = p.bnn_inputs;
      j["bnn_neurons"] = p.bnn_neurons;
      j["bnn_threshold"] = p.bnn_threshold;
      break;
    default: break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Predicates

bool Predicate::eval(const std::vector<bool>& bitmaps) const {
  switch (kind) {
    case Kind::kVar: return bitmaps.at(index - 1);
    case Kind::kNot: return !children[0].eval(bitmaps);
    case Kind::kAnd:
      return std::all_of(children.begin(), children.end(),
                         [&](const Predicate& c) { return c.eval(bitmaps); });
    case Kind::kOr:
      return std::any_of(children.begin(), children.end(),
                         [&](const Predicate& c) { return c.eval(bitmaps); });
  }
  return false;
}

std::uint32_t Predicate::max_index() const {
  std::uint32_t m = kind == Kind::kVar ? index : 0;
  for (const auto& c : children) m = std::max(m, c.max_index());
  return m;
}

namespace {

// expr := term ('|' term)* ; term := factor ('&' factor)* ;
// factor := ('!' | '~') factor | '(' expr ')' | 'b' digits
class PredicateParser {
 public:
  explicit PredicateParser(std::string_view text) : s_(text) {}

  Predicate parse() {
    Predicate p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    unsupported("predicate: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Predicate binary(Predicate::Kind kind, char op, Predicate (PredicateParser::*next)()) {
    Predicate first = (this->*next)();
    if (!accept(op)) return first;
    Predicate node;
    node.kind = kind;
    node.children.push_back(std::move(first));
    do {
      node.children.push_back((this->*next)());
    } while (accept(op));
    return node;
  }

  Predicate expr() { return binary(Predicate::Kind::kOr, '|', &PredicateParser::term); }
  Predicate term() { return binary(Predicate::Kind::kAnd, '&', &PredicateParser::factor); }

  Predicate factor() {
    if (accept('!') || accept('~')) {
      Predicate node;
      node.kind = Predicate::Kind::kNot;
      node.children.push_back(factor());
      return node;
    }
    if (accept('(')) {
      Predicate inner = expr();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (!accept('b')) fail("expected bN, '!' or '('");
    std::uint32_t n = 0;
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = n * 10 + static_cast<std::uint32_t>(s_[pos_++] - '0');
      if (n > 4096) fail("bitmap index too large");
    }
    if (pos_ == start || n == 0) fail("bitmap index must be >= 1");
    Predicate leaf;
    leaf.index = n;
    return leaf;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate parse_predicate(std::string_view text) { return PredicateParser(text).parse(); }

// ---------------------------------------------------------------------------
// Layout and data

namespace {

std::string indexed(const char* stem, std::size_t i) { return stem + std::to_string(i); }

std::vector<std::string> data_input_names(const WorkloadSpec& spec) {
  const auto& p = spec.params;
  std::vector<std::string> names;
  switch (spec.workload) {
    case Workload::kCrc8:
      for (std::size_t i = 0; i < p.message_bytes * 8u; ++i) names.push_back(indexed("m", i));
      break;
    case Workload::kXorCipher: names = {"p"}; break;
    case Workload::kSetUnion:
    case Workload::kSetIntersection:
    case Workload::kSetDifference: names = {"a", "b"}; break;
    case Workload::kMaskedInit: names = {"dst", "mask", "val"}; break;
    case Workload::kBitmapQuery: {
      const auto k = parse_predicate(p.predicate).max_index();
      for (std::uint32_t i = 1; i <= k; ++i) names.push_back(indexed("b", i));
      break;
    }
    case Workload::kBnnInference:
      for (std::size_t i = 0; i < p.bnn_inputs; ++i) names.push_back(indexed("x", i));
      break;
  }
  return names;
}

std::string weight_name(std::size_t neuron, std::size_t input) {
  return "w" + std::to_string(neuron) + "_" + std::to_string(input);
}

std::vector<std::string> broadcast_input_names(const WorkloadSpec& spec) {
  std::vector<std::string> names;
  if (spec.workload == Workload::kXorCipher) names.push_back("key");
  if (spec.workload == Workload::kBnnInference) {
    for (std::size_t j = 0; j < spec.params.bnn_neurons; ++j) {
      for (std::size_t i = 0; i < spec.params.bnn_inputs; ++i) names.push_back(weight_name(j, i));
    }
  }
  return names;
}

void fill_random(RowVector& row, Xorshift64Star& rng) {
  for (auto& w : row.words()) w = rng.next();
  row.mask_tail();
}

}  // namespace

std::size_t record_rows(const WorkloadSpec& spec) { return data_input_names(spec).size(); }

std::vector<const RowVector*> Dataset::instance_inputs(std::uint64_t instance) const {
  std::vector<const RowVector*> out;
  for (const auto& r : data.at(instance)) out.push_back(&r);
  for (const auto& r : broadcast) out.push_back(&r);
  return out;
}

Dataset generate(const WorkloadSpec& spec, std::size_t row_width) {
  check_params(spec);
  if (row_width == 0 || row_width % 8 != 0) {
    throw SimError(ErrorCode::kUnsupportedGeometry, "row width must be a positive multiple of 8");
  }
  if (spec.size_bytes % (row_width / 8) != 0) {
    throw SimError(ErrorCode::kSizeNotAligned,
                   std::to_string(spec.size_bytes) + " bytes is not a multiple of the " +
                       std::to_string(row_width / 8) + "-byte row");
  }
  Dataset d;
  d.row_width = row_width;
  d.data_inputs = data_input_names(spec);
  d.broadcast_inputs = broadcast_input_names(spec);
  const std::uint64_t per_record = d.data_inputs.empty() ? 1 : d.data_inputs.size();
  d.records = spec.size_bytes * 8 / per_record;
  d.instances = (d.records + row_width - 1) / row_width;

  Xorshift64Star rng(spec.seed);
  if (spec.workload == Workload::kXorCipher) {
    RowVector key(row_width);
    fill_random(key, rng);
    d.broadcast.push_back(std::move(key));
  } else if (spec.workload == Workload::kBnnInference) {
    // One network shared by every record: each weight bit is broadcast
    // across the whole row.
    for (std::size_t k = 0; k < d.broadcast_inputs.size(); ++k) {
      d.broadcast.emplace_back(row_width, rng.next_bit());
    }
  }

  d.data.resize(d.instances);
  for (std::uint64_t i = 0; i < d.instances; ++i) {
    const std::uint64_t used = std::min<std::uint64_t>(row_width, d.records - i * row_width);
    for (std::size_t r = 0; r < d.data_inputs.size(); ++r) {
      RowVector row(row_width);
      fill_random(row, rng);
      for (std::uint64_t c = used; c < row_width; ++c) row.set(c, false);
      d.data[i].push_back(std::move(row));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Oracles

std::uint8_t crc8_reference(const std::uint8_t* bytes, std::size_t n, std::uint8_t poly,
                            std::uint8_t init) {
  std::uint8_t crc = init;
  for (std::size_t i = 0; i < n; ++i) {
    crc ^= bytes[i];
    for (int b = 0; b < 8; ++b) {
      crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ poly)
                         : static_cast<std::uint8_t>(crc << 1);
    }
  }
  return crc;
}

RowMap oracle(const WorkloadSpec& spec, const Dataset& data, std::uint64_t instance) {
  const auto& rows = data.data.at(instance);
  const auto& p = spec.params;
  const std::size_t w = data.row_width;
  RowMap out;
  auto bit = [&](std::size_t r, std::size_t c) { return rows[r].get(c); };
  auto row = [&](const std::string& name) -> RowVector& {
    return out.try_emplace(name, w).first->second;
  };

  switch (spec.workload) {
    case Workload::kCrc8: {
      std::vector<std::uint8_t> msg(p.message_bytes);
      std::vector<RowVector*> crc;
      for (int k = 0; k < 8; ++k) crc.push_back(&row(indexed("crc", k)));
      for (std::size_t c = 0; c < w; ++c) {
        std::fill(msg.begin(), msg.end(), 0);
        for (std::size_t i = 0; i < msg.size() * 8; ++i) {
          if (bit(i, c)) msg[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
        }
        const auto value = crc8_reference(msg.data(), msg.size(), p.crc_poly, p.crc_init);
        for (int k = 0; k < 8; ++k) {
          if ((value >> k) & 1) crc[k]->set(c, true);
        }
      }
      break;
    }
    case Workload::kXorCipher:
    {
      RowVector& o = row("c");
      for (std::size_t c = 0; c < w; ++c) o.set(c, bit(0, c) != data.broadcast[0].get(c));
    }
      break;
    case Workload::kSetUnion:
    {
      RowVector& o = row("out");
      for (std::size_t c = 0; c < w; ++c) o.set(c, bit(0, c) || bit(1, c));
    }
      break;
    case Workload::kSetIntersection:
    {
      RowVector& o = row("out");
      for (std::size_t c = 0; c < w; ++c) o.set(c, bit(0, c) && bit(1, c));
    }
      break;
    case Workload::kSetDifference:
    {
      RowVector& o = row("out");
      for (std::size_t c = 0; c < w; ++c) o.set(c, bit(0, c) && !bit(1, c));
    }
      break;
    case Workload::kMaskedInit:
    {
      RowVector& o = row("out");
      for (std::size_t c = 0; c < w; ++c) o.set(c, bit(1, c) ? bit(2, c) : bit(0, c));
    }
      break;
    case Workload::kBitmapQuery: {
      const Predicate pred = parse_predicate(p.predicate);
      std::vector<bool> b(rows.size());
      RowVector& o = row("result");
      for (std::size_t c = 0; c < w; ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) b[r] = bit(r, c);
        o.set(c, pred.eval(b));
      }
      break;
    }
    case Workload::kBnnInference: {
      // Inputs and weights packed into 64-bit words; a neuron's popcount is
      // the number of positions where input and weight agree.
      const std::size_t n = p.bnn_inputs;
      const std::size_t words = (n + 63) / 64;
      std::vector<std::uint64_t> weights(p.bnn_neurons * words, 0);
      for (std::size_t j = 0; j < p.bnn_neurons; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          if (data.broadcast[j * n + i].get(0)) weights[j * words + i / 64] |= 1ULL << (i % 64);
        }
      }
      std::vector<RowVector*> y;
      for (std::size_t j = 0; j < p.bnn_neurons; ++j) {
        y.push_back(&row(indexed("y", j)));
      }
      std::vector<std::uint64_t> x(words);
      for (std::size_t c = 0; c < w; ++c) {
        std::fill(x.begin(), x.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
          if (bit(i, c)) x[i / 64] |= 1ULL << (i % 64);
        }
        for (std::size_t j = 0; j < p.bnn_neurons; ++j) {
          std::uint32_t pop = 0;
          for (std::size_t k = 0; k < words; ++k) {
            const std::size_t valid = std::min<std::size_t>(64, n - k * 64);
            const std::uint64_t mask = valid == 64 ? ~0ULL : (1ULL << valid) - 1;
            pop += static_cast<std::uint32_t>(std::popcount(~(x[k] ^ weights[j * words + k]) & mask));
          }
          if (pop > p.bnn_threshold) y[j]->set(c, true);
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Program builders

namespace {

/// A row value that may be known at build time. Gates with a constant
/// operand are simplified away so programs only contain real row work.
struct Sym {
  std::optional<bool> constant;
  std::string name;

  static Sym k(bool b) { return {b, {}}; }
  static Sym var(std::string n) { return {std::nullopt, std::move(n)}; }
};

class Folder {
 public:
  explicit Folder(ProgramBuilder& b) : b_(b) {}

  Sym not_(const Sym& a) {
    if (a.constant) return Sym::k(!*a.constant);
    return Sym::var(b_.not_(a.name));
  }
  Sym and_(const Sym& a, const Sym& c) {
    if (a.constant) return *a.constant ? c : Sym::k(false);
    if (c.constant) return and_(c, a);
    return Sym::var(b_.and_(a.name, c.name));
  }
  Sym or_(const Sym& a, const Sym& c) {
    if (a.constant) return *a.constant ? Sym::k(true) : c;
    if (c.constant) return or_(c, a);
    return Sym::var(b_.or_(a.name, c.name));
  }
  Sym xor_(const Sym& a, const Sym& c) {
    if (a.constant) return *a.constant ? not_(c) : c;
    if (c.constant) return xor_(c, a);
    return Sym::var(b_.xor_(a.name, c.name));
  }
  Sym xnor(const Sym& a, const Sym& c) {
    if (a.constant) return *a.constant ? c : not_(c);
    if (c.constant) return xnor(c, a);
    return Sym::var(b_.xnor(a.name, c.name));
  }
  Sym maj(const Sym& a, const Sym& c, const Sym& d) {
    if (a.constant) return *a.constant ? or_(c, d) : and_(c, d);
    if (c.constant) return maj(c, a, d);
    if (d.constant) return maj(d, a, c);
    return Sym::var(b_.maj(a.name, c.name, d.name));
  }

  void output(const Sym& s, const std::string& name) {
    if (s.constant) {
      b_.output(b_.constant(*s.constant), name);
      return;
    }
    auto it = renamed_.find(s.name);
    b_.output(it == renamed_.end() ? s.name : it->second, name);
    renamed_.emplace(s.name, name);
  }

 private:
  ProgramBuilder& b_;
  std::map<std::string, std::string> renamed_;
};

BitProgram build_crc8(const WorkloadSpec& spec, ProgramBuilder& b, Folder& f) {
  const auto& p = spec.params;
  std::vector<Sym> msg;
  for (const auto& n : data_input_names(spec)) msg.push_back(Sym::var(b.input(n)));
  std::vector<Sym> s;
  for (int k = 0; k < 8; ++k) s.push_back(Sym::k((p.crc_init >> k) & 1));
  for (const auto& m : msg) {
    const Sym fb = f.xor_(s[7], m);
    std::vector<Sym> next(8);
    for (int k = 0; k < 8; ++k) {
      const Sym shifted = k > 0 ? s[k - 1] : Sym::k(false);
      next[k] = f.xor_(shifted, f.and_(fb, Sym::k((p.crc_poly >> k) & 1)));
    }
    s = std::move(next);
  }
  for (int k = 0; k < 8; ++k) f.output(s[k], indexed("crc", k));
  return b.build();
}

/// Ripple-carry add of two little-endian bit vectors.
std::vector<Sym> add(Folder& f, const std::vector<Sym>& a, const std::vector<Sym>& c) {
  const std::size_t n = std::max(a.size(), c.size());
  std::vector<Sym> sum;
  Sym carry = Sym::k(false);
  for (std::size_t i = 0; i < n; ++i) {
    const Sym x = i < a.size() ? a[i] : Sym::k(false);
    const Sym y = i < c.size() ? c[i] : Sym::k(false);
    sum.push_back(f.xor_(f.xor_(x, y), carry));
    carry = f.maj(x, y, carry);
  }
  sum.push_back(carry);
  return sum;
}

/// count > threshold, MSB first.
Sym greater_than(Folder& f, const std::vector<Sym>& count, std::uint32_t threshold) {
  Sym gt = Sym::k(false);
  Sym eq = Sym::k(true);
  const std::size_t top = std::max<std::size_t>(count.size(), 32);
  for (std::size_t i = top; i-- > 0;) {
    const Sym c = i < count.size() ? count[i] : Sym::k(false);
    const bool t = i < 32 && ((threshold >> i) & 1u);
    if (!t) gt = f.or_(gt, f.and_(eq, c));
    if (i == 0) break;
    eq = t ? f.and_(eq, c) : f.and_(eq, f.not_(c));
  }
  return gt;
}

BitProgram build_bnn(const WorkloadSpec& spec, ProgramBuilder& b, Folder& f) {
  const auto& p = spec.params;
  std::vector<Sym> x;
  for (const auto& n : data_input_names(spec)) x.push_back(Sym::var(b.input(n)));
  std::vector<std::vector<Sym>> w(p.bnn_neurons);
  for (std::size_t j = 0; j < p.bnn_neurons; ++j) {
    for (std::size_t i = 0; i < p.bnn_inputs; ++i) w[j].push_back(Sym::var(b.input(weight_name(j, i))));
  }
  std::vector<Sym> y;
  for (std::size_t j = 0; j < p.bnn_neurons; ++j) {
    std::vector<std::vector<Sym>> counts;
    for (std::size_t i = 0; i < p.bnn_inputs; ++i) counts.push_back({f.xnor(x[i], w[j][i])});
    while (counts.size() > 1) {
      std::vector<std::vector<Sym>> next;
      for (std::size_t k = 0; k + 1 < counts.size(); k += 2) next.push_back(add(f, counts[k], counts[k + 1]));
      if (counts.size() % 2 == 1) next.push_back(counts.back());
      counts = std::move(next);
    }
    y.push_back(greater_than(f, counts[0], p.bnn_threshold));
  }
  for (std::size_t j = 0; j < y.size(); ++j) f.output(y[j], indexed("y", j));
  return b.build();
}

Sym build_predicate(Folder& f, const Predicate& pred) {
  switch (pred.kind) {
    case Predicate::Kind::kVar: return Sym::var(indexed("b", pred.index));
    case Predicate::Kind::kNot: return f.not_(build_predicate(f, pred.children[0]));
    case Predicate::Kind::kAnd:
    case Predicate::Kind::kOr: {
      Sym acc = build_predicate(f, pred.children[0]);
      for (std::size_t i = 1; i < pred.children.size(); ++i) {
        const Sym next = build_predicate(f, pred.children[i]);
        acc = pred.kind == Predicate::Kind::kAnd ? f.and_(acc, next) : f.or_(acc, next);
      }
      return acc;
    }
  }
  return Sym::k(false);
}

}  // namespace

BitProgram build_program(const WorkloadSpec& spec) {
  check_params(spec);
  ProgramBuilder b;
  Folder f(b);
  switch (spec.workload) {
    case Workload::kCrc8: return build_crc8(spec, b, f);
    case Workload::kBnnInference: return build_bnn(spec, b, f);
    case Workload::kXorCipher: {
      const auto p = b.input("p");
      const auto key = b.input("key");
      b.output(b.xor_(p, key), "c");
      return b.build();
    }
    case Workload::kSetUnion:
    case Workload::kSetIntersection:
    case Workload::kSetDifference: {
      const auto a = b.input("a");
      const auto c = b.input("b");
      const auto out = spec.workload == Workload::kSetUnion          ? b.or_(a, c)
                       : spec.workload == Workload::kSetIntersection ? b.and_(a, c)
                                                                     : b.and_(a, b.not_(c));
      b.output(out, "out");
      return b.build();
    }
    case Workload::kMaskedInit: {
      const auto dst = b.input("dst");
      const auto mask = b.input("mask");
      const auto val = b.input("val");
      const auto keep = b.and_(dst, b.not_(mask));
      b.output(b.or_(keep, b.and_(val, mask)), "out");
      return b.build();
    }
    case Workload::kBitmapQuery: {
      const Predicate pred = parse_predicate(spec.params.predicate);
      for (const auto& n : data_input_names(spec)) b.input(n);
      f.output(build_predicate(f, pred), "result");
      return b.build();
    }
  }
  unsupported("unknown workload");
}

// ---------------------------------------------------------------------------

WorkloadReport run(const WorkloadSpec& spec, Backend backend, const RunSettings& settings) {
  const BitProgram program = build_program(spec);
  const LoweredPlan plan = lower(program, settings.geometry, backend);
  const Dataset data = generate(spec, settings.geometry.row_width);

  std::vector<std::string> expected_inputs = data.data_inputs;
  expected_inputs.insert(expected_inputs.end(), data.broadcast_inputs.begin(),
                         data.broadcast_inputs.end());
  if (plan.inputs != expected_inputs) {
    throw SimError(ErrorCode::kInvalidProgram, "program inputs do not match the dataset layout");
  }

  ExecOptions options;
  options.cell = settings.cell;
  options.record_trace = false;
  PlanRunner runner(plan, settings.cost, options);

  WorkloadReport r;
  r.name = std::string(to_string(spec.workload));
  r.backend = backend;
  r.size_bytes = spec.size_bytes;
  r.seed = spec.seed;
  r.records = data.records;
  r.instances = data.instances;

  RowDigest got;
  RowDigest want;
  bool match = true;
  for (std::uint64_t i = 0; i < data.instances; ++i) {
    const auto outputs = runner.run(data.instance_inputs(i));
    const RowMap expected = oracle(spec, data, i);
    for (std::size_t k = 0; k < plan.outputs.size(); ++k) {
      const RowVector& e = expected.at(plan.outputs[k]);
      got.add(outputs[k]);
      want.add(e);
      match = match && outputs[k] == e;
    }
  }
  r.output_digest = got.value();
  r.oracle_digest = want.value();
  r.oracle_match = match && r.output_digest == r.oracle_digest;
  r.ledger = runner.ledger();
  r.endurance_warnings = runner.endurance_warnings();
  return r;
}

}  // namespace fepim

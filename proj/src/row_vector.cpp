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

#include "fepim/row_vector.hpp"

#include <algorithm>
#include <bit>

#include "fepim/error.hpp"

namespace fepim {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

}  // namespace

RowVector::RowVector(std::size_t width, bool fill_value)
    : width_(width), words_(words_for(width), fill_value ? ~0ULL : 0ULL) {
  mask_tail();
}

RowVector RowVector::from_string(std::string_view bits) {
  RowVector row(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      row.set(i, true);
    } else if (bits[i] != '0') {
      throw SimError(ErrorCode::kInvalidProgram, "row literal must contain only 0/1");
    }
  }
  return row;
}

bool RowVector::get(std::size_t column) const {
  if (column >= width_) {
    throw SimError(ErrorCode::kIndexOutOfRange, "column " + std::to_string(column));
  }
  return (words_[column / kWordBits] >> (column % kWordBits)) & 1ULL;
}

void RowVector::set(std::size_t column, bool value) {
  if (column >= width_) {
    throw SimError(ErrorCode::kIndexOutOfRange, "column " + std::to_string(column));
  }
  const std::uint64_t bit = 1ULL << (column % kWordBits);
  auto& word = words_[column / kWordBits];
  word = value ? (word | bit) : (word & ~bit);
}

void RowVector::fill(bool value) {
  std::fill(words_.begin(), words_.end(), value ? ~0ULL : 0ULL);
  mask_tail();
}

std::size_t RowVector::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool RowVector::all(bool value) const noexcept {
  return popcount() == (value ? width_ : 0);
}

RowVector RowVector::operator~() const {
  RowVector out = *this;
  for (auto& w : out.words_) w = ~w;
  out.mask_tail();
  return out;
}

RowVector& RowVector::operator&=(const RowVector& other) {
  require_same_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

RowVector& RowVector::operator|=(const RowVector& other) {
  require_same_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

RowVector& RowVector::operator^=(const RowVector& other) {
  require_same_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string RowVector::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

void RowVector::mask_tail() noexcept {
  const std::size_t rem = width_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (1ULL << rem) - 1;
}

void RowVector::require_same_width(const RowVector& other) const {
  if (other.width_ != width_) {
    throw SimError(ErrorCode::kWidthMismatch,
                   std::to_string(width_) + " vs " + std::to_string(other.width_));
  }
}

RowVector majority(const RowVector& a, const RowVector& b, const RowVector& c) {
  return (a & b) | (c & (a | b));
}

RowVector minority(const RowVector& a, const RowVector& b, const RowVector& c) {
  return ~majority(a, b, c);
}

void RowDigest::add_u64(std::uint64_t v) noexcept {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (v >> (8 * i)) & 0xffULL;
    state_ *= 0x100000001b3ULL;
  }
}

void RowDigest::add(const RowVector& row) noexcept {
  add_u64(row.width());
  for (auto w : row.words()) add_u64(w);
}

}  // namespace fepim

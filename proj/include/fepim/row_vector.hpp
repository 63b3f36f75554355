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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fepim {

/// One memory row's logical contents, packed 64 columns per word.
///
/// Bits beyond `width()` in the last word are kept at zero by every
/// mutating operation, so word-wise equality and hashing are exact.
class RowVector {
 public:
  RowVector() = default;
  explicit RowVector(std::size_t width, bool fill = false);

  static RowVector from_string(std::string_view bits);

  std::size_t width() const noexcept { return width_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool get(std::size_t column) const;
  void set(std::size_t column, bool value);
  void fill(bool value);

  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::size_t popcount() const noexcept;
  bool all(bool value) const noexcept;

  RowVector operator~() const;
  RowVector& operator&=(const RowVector& other);
  RowVector& operator|=(const RowVector& other);
  RowVector& operator^=(const RowVector& other);

  friend RowVector operator&(RowVector a, const RowVector& b) { return a &= b; }
  friend RowVector operator|(RowVector a, const RowVector& b) { return a |= b; }
  friend RowVector operator^(RowVector a, const RowVector& b) { return a ^= b; }
  friend bool operator==(const RowVector& a, const RowVector& b) = default;

  /// Leftmost character is column 0.
  std::string to_string() const;

  /// Clears any bits past `width()` in the last word.
  void mask_tail() noexcept;

 private:
  void require_same_width(const RowVector& other) const;

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Columnwise MAJORITY of three equal-width rows.
RowVector majority(const RowVector& a, const RowVector& b, const RowVector& c);
/// Columnwise MINORITY, i.e. NOT(MAJORITY).
RowVector minority(const RowVector& a, const RowVector& b, const RowVector& c);

/// FNV-1a 64 over a stream of rows. Each row contributes its width as a
/// little-endian u64 followed by its packed words in little-endian byte
/// order.
class RowDigest {
 public:
  void add(const RowVector& row) noexcept;
  std::uint64_t value() const noexcept { return state_; }

 private:
  void add_u64(std::uint64_t v) noexcept;

  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace fepim

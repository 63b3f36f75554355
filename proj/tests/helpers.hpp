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

#include <functional>
#include <optional>

#include "fepim/error.hpp"
#include "fepim/prng.hpp"
#include "fepim/row_vector.hpp"

namespace fepim::testing {

/// Error code thrown by `f`, or nullopt if it returned normally.
inline std::optional<ErrorCode> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SimError& e) {
    return e.code();
  }
  return std::nullopt;
}

inline RowVector random_row(std::size_t width, Xorshift64Star& rng) {
  RowVector r(width);
  for (std::size_t c = 0; c < width; ++c) r.set(c, rng.next_bit());
  return r;
}

}  // namespace fepim::testing

// Copyright 2026 The meol Authors
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
#include <string_view>

namespace meol {

/// 64-bit FNV-1a. Stable across platforms and releases; used for cache keys,
/// mock-backend seeding and 3-gram bucketing.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;

/// Incremental FNV-1a with length-prefixed fields, so ("ab","c") and
/// ("a","bc") hash differently.
class FieldHasher {
 public:
  FieldHasher& add(std::string_view field);
  FieldHasher& add_absent();
  FieldHasher& add(std::int64_t value);
  std::uint64_t value() const noexcept { return state_; }
  std::string hex() const;

 private:
  void mix(std::string_view bytes) noexcept;
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex64(std::uint64_t v);

}  // namespace meol

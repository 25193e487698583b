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

#include "meol/hash.hpp"

#include <array>

namespace meol {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) noexcept {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void FieldHasher::mix(std::string_view bytes) noexcept {
  state_ = fnv1a64(bytes, state_);
}

FieldHasher& FieldHasher::add(std::string_view field) {
  std::array<char, 9> prefix{};
  prefix[0] = 'S';
  auto n = static_cast<std::uint64_t>(field.size());
  for (int i = 0; i < 8; ++i) prefix[1 + i] = static_cast<char>((n >> (8 * i)) & 0xff);
  mix(std::string_view(prefix.data(), prefix.size()));
  mix(field);
  return *this;
}

FieldHasher& FieldHasher::add_absent() {
  mix(std::string_view("N", 1));
  return *this;
}

FieldHasher& FieldHasher::add(std::int64_t value) {
  std::array<char, 9> buf{};
  buf[0] = 'I';
  auto u = static_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) buf[1 + i] = static_cast<char>((u >> (8 * i)) & 0xff);
  mix(std::string_view(buf.data(), buf.size()));
  return *this;
}

std::string FieldHasher::hex() const { return to_hex64(state_); }

std::string to_hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace meol

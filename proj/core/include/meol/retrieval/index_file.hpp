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

#include <filesystem>
#include <string>
#include <string_view>

#include "meol/retrieval/index.hpp"

namespace meol::retrieval {

inline constexpr std::string_view kIndexMagic{"MEOLIDX\0", 8};
inline constexpr std::uint32_t kIndexVersion = 1;

/// Layout (little-endian): magic[8], u32 version, u32 dim, u64 N,
/// N x (u32 byte length + item id bytes), N x dim float32.
std::string index_to_bytes(const RetrievalIndex& index);
RetrievalIndex index_from_bytes(std::string_view bytes);

void save_index(const RetrievalIndex& index, const std::filesystem::path& path);
RetrievalIndex load_index(const std::filesystem::path& path);

}  // namespace meol::retrieval

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
#include <optional>
#include <string>
#include <string_view>

#include "meol/embed/embed.hpp"

namespace meol::bench {

/// On-disk store keyed by (kind, item id, config fingerprint). Writes go to
/// a temporary file that is renamed into place, so a killed run never
/// leaves a partial entry. Safe for concurrent use on distinct keys.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path dir);

  std::optional<embed::EmbeddingRecord> get(std::string_view kind, std::string_view item_id,
                                            std::string_view fingerprint) const;
  void put(std::string_view kind, std::string_view fingerprint, const embed::EmbeddingRecord& record) const;

  std::optional<std::string> get_blob(std::string_view kind, std::string_view item_id,
                                      std::string_view fingerprint) const;
  void put_blob(std::string_view kind, std::string_view item_id, std::string_view fingerprint,
                std::string_view blob) const;

  std::filesystem::path entry_path(std::string_view kind, std::string_view item_id,
                                   std::string_view fingerprint) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

std::string record_to_cache_json(const embed::EmbeddingRecord& r);
embed::EmbeddingRecord record_from_cache_json(std::string_view text);

}  // namespace meol::bench

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

#include "meol/bench/cache.hpp"

#include <atomic>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "meol/error.hpp"
#include "meol/hash.hpp"

namespace meol::bench {

using nlohmann::json;

namespace {

std::atomic<std::uint64_t> g_temp_counter{0};

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& p, std::string_view data) {
  std::filesystem::create_directories(p.parent_path());
  auto tmp = p;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
         std::to_string(++g_temp_counter);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw FileUnreadable("cannot write cache entry " + tmp.string());
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw FileUnreadable("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

EmbeddingCache::EmbeddingCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path EmbeddingCache::entry_path(std::string_view kind, std::string_view item_id,
                                                 std::string_view fingerprint) const {
  FieldHasher h;
  h.add(item_id);
  return dir_ / std::string(fingerprint) / (std::string(kind) + "-" + h.hex() + ".json");
}

std::optional<embed::EmbeddingRecord> EmbeddingCache::get(std::string_view kind, std::string_view item_id,
                                                          std::string_view fingerprint) const {
  auto text = read_file(entry_path(kind, item_id, fingerprint));
  if (!text) return std::nullopt;
  try {
    auto rec = record_from_cache_json(*text);
    if (rec.item_id != item_id) return std::nullopt;
    return rec;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void EmbeddingCache::put(std::string_view kind, std::string_view fingerprint, const embed::EmbeddingRecord& record) const {
  write_atomic(entry_path(kind, record.item_id, fingerprint), record_to_cache_json(record));
}

std::optional<std::string> EmbeddingCache::get_blob(std::string_view kind, std::string_view item_id,
                                                    std::string_view fingerprint) const {
  auto text = read_file(entry_path(kind, item_id, fingerprint));
  if (!text) return std::nullopt;
  try {
    json j = json::parse(*text);
    if (j.at("item_id").get<std::string>() != item_id) return std::nullopt;
    return j.at("blob").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void EmbeddingCache::put_blob(std::string_view kind, std::string_view item_id, std::string_view fingerprint,
                              std::string_view blob) const {
  json j = {{"item_id", std::string(item_id)}, {"blob", std::string(blob)}};
  write_atomic(entry_path(kind, item_id, fingerprint), j.dump(-1, ' ', false, json::error_handler_t::replace));
}

std::string record_to_cache_json(const embed::EmbeddingRecord& r) {
  json j = {{"item_id", r.item_id},
            {"template_id", r.template_id},
            {"model_id", r.model_id},
            {"dim", r.dim},
            {"layer_offset", r.selector.layer_offset},
            {"pooling", r.selector.pooling},
            {"vector", r.vector}};
  return j.dump();
}

embed::EmbeddingRecord record_from_cache_json(std::string_view text) {
  json j = json::parse(text.begin(), text.end());
  embed::EmbeddingRecord r;
  r.item_id = j.at("item_id").get<std::string>();
  r.template_id = j.at("template_id").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.selector.layer_offset = j.at("layer_offset").get<int>();
  r.selector.pooling = j.at("pooling").get<std::string>();
  r.vector = j.at("vector").get<std::vector<double>>();
  if (r.vector.size() != static_cast<std::size_t>(r.dim)) throw ProtocolError("cached vector length mismatch");
  return r;
}

}  // namespace meol::bench

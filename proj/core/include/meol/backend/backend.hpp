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
#include <memory>
#include <string>

#include "meol/backend/protocol.hpp"

namespace meol::backend {

/// Anything that answers embed requests. Implementations must be safe to
/// call from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual EmbedResponse embed(const EmbedRequest& req) = 0;
  virtual std::string name() const = 0;
};

inline constexpr int kMockHashDim = 64;
inline constexpr int kMockSemanticDim = 512;
inline constexpr int kMockLayerCount = 33;

/// Seeded pseudo-random unit vector keyed by every request field except
/// request_id. A nonzero seed is mixed into the key.
EmbedResponse mock_hash_embed(const EmbedRequest& req, std::uint64_t seed = 0);

/// L2-normalized hashed character 3-gram counts of text + "\n" + svg_code.
/// Inputs with no 3-gram map to the basis vector e_0.
EmbedResponse mock_semantic_embed(const EmbedRequest& req);

/// Bucket used by mock_semantic_embed for one 3-gram.
std::size_t trigram_bucket(std::string_view trigram);

class MockHashBackend : public Backend {
 public:
  explicit MockHashBackend(std::uint64_t seed = 0) : seed_(seed) {}
  EmbedResponse embed(const EmbedRequest& req) override { return mock_hash_embed(req, seed_); }
  std::string name() const override { return "mock-hash"; }

 private:
  std::uint64_t seed_;
};

class MockSemanticBackend : public Backend {
 public:
  EmbedResponse embed(const EmbedRequest& req) override { return mock_semantic_embed(req); }
  std::string name() const override { return "mock-semantic"; }
};

/// "mock-hash", "mock-semantic" or "remote" (which connects to `address`).
std::shared_ptr<Backend> make_backend(const std::string& kind, const std::string& address = "",
                                      std::uint64_t seed = 0, std::size_t pool_cap = 4);

}  // namespace meol::backend

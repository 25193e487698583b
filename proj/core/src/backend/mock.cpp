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

#include <cmath>
#include <random>

#include "meol/backend/backend.hpp"
#include "meol/backend/remote.hpp"
#include "meol/error.hpp"
#include "meol/hash.hpp"

namespace meol::backend {

namespace {

void validate(const EmbedRequest& req) {
  if (req.layer_offset < 0 || req.layer_offset >= kMockLayerCount)
    throw BackendRejected("layer_offset " + std::to_string(req.layer_offset) + " outside [0, " +
                          std::to_string(kMockLayerCount) + ")");
  if (!is_valid_pooling(req.pooling)) throw BackendRejected("unknown pooling \"" + req.pooling + "\"");
}

int token_estimate(const EmbedRequest& req) {
  std::size_t bytes = req.text.size() + (req.svg_code ? req.svg_code->size() : 0);
  return static_cast<int>(std::max<std::size_t>(1, (bytes + 3) / 4));
}

}  // namespace

EmbedResponse mock_hash_embed(const EmbedRequest& req, std::uint64_t seed) {
  validate(req);
  FieldHasher h;
  h.add(req.text);
  req.image_b64 ? h.add(*req.image_b64) : h.add_absent();
  req.svg_code ? h.add(*req.svg_code) : h.add_absent();
  h.add(static_cast<std::int64_t>(req.layer_offset));
  h.add(req.pooling);
  if (seed != 0) h.add(static_cast<std::int64_t>(seed));
  std::mt19937_64 rng(h.value());
  std::vector<double> v(kMockHashDim);
  double norm2 = 0;
  for (auto& x : v) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = 2 * u - 1;
    norm2 += x * x;
  }
  double norm = std::sqrt(norm2);
  if (norm == 0) {
    v.assign(kMockHashDim, 0.0);
    v[0] = 1.0;
  } else {
    for (auto& x : v) x /= norm;
  }
  return {std::move(v), kMockHashDim, "mock-hash", kMockLayerCount, token_estimate(req), req.request_id};
}

std::size_t trigram_bucket(std::string_view trigram) {
  return static_cast<std::size_t>(fnv1a64(trigram) % kMockSemanticDim);
}

EmbedResponse mock_semantic_embed(const EmbedRequest& req) {
  validate(req);
  std::string content = req.text;
  if (req.svg_code) {
    content += '\n';
    content += *req.svg_code;
  }
  std::vector<double> v(kMockSemanticDim, 0.0);
  for (std::size_t i = 0; i + 3 <= content.size(); ++i) v[trigram_bucket(std::string_view(content).substr(i, 3))] += 1;
  double norm2 = 0;
  for (double x : v) norm2 += x * x;
  if (norm2 == 0) {
    v[0] = 1.0;
  } else {
    double norm = std::sqrt(norm2);
    for (auto& x : v) x /= norm;
  }
  return {std::move(v), kMockSemanticDim, "mock-semantic", kMockLayerCount, token_estimate(req), req.request_id};
}

std::shared_ptr<Backend> make_backend(const std::string& kind, const std::string& address, std::uint64_t seed,
                                      std::size_t pool_cap) {
  if (kind == "mock-hash") return std::make_shared<MockHashBackend>(seed);
  if (kind == "mock-semantic") return std::make_shared<MockSemanticBackend>();
  if (kind == "remote") return std::make_shared<RemoteBackend>(Address::parse(address.empty() ? default_address() : address), pool_cap);
  throw ConfigError("unknown backend \"" + kind + "\" (expected mock-hash, mock-semantic or remote)");
}

}  // namespace meol::backend

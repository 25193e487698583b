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

#include "meol/embed/embed.hpp"

#include <atomic>
#include <cmath>

#include "meol/error.hpp"

namespace meol::embed {

namespace {
std::atomic<std::uint64_t> g_request_counter{0};
}

backend::EmbedRequest make_request(const PromptPayload& payload, const HiddenStateSelector& selector,
                                   std::string request_id) {
  backend::EmbedRequest req;
  req.text = payload.text_segment;
  if (payload.image_attachment) req.image_b64 = backend::base64_encode(svg::encode_png(*payload.image_attachment));
  req.svg_code = payload.svg_segment;
  req.layer_offset = selector.layer_offset;
  req.pooling = selector.pooling;
  req.request_id = std::move(request_id);
  return req;
}

EmbeddingRecord embed(backend::Backend& backend, const PromptPayload& payload, const HiddenStateSelector& selector,
                      std::string item_id) {
  if (selector.layer_offset < 0) throw BackendRejected("layer_offset must be >= 0");
  if (!backend::is_valid_pooling(selector.pooling)) throw BackendRejected("unknown pooling \"" + selector.pooling + "\"");
  auto req = make_request(payload, selector, "req-" + std::to_string(++g_request_counter));
  auto resp = backend.embed(req);
  backend::check_response(req, resp);
  if (static_cast<std::size_t>(resp.dim) != resp.vector.size())
    throw ProtocolError("dim " + std::to_string(resp.dim) + " does not match vector length");
  for (std::size_t i = 0; i < resp.vector.size(); ++i)
    if (!std::isfinite(resp.vector[i])) throw NonFiniteVector("component " + std::to_string(i) + " is not finite");
  EmbeddingRecord rec;
  rec.vector = std::move(resp.vector);
  rec.dim = resp.dim;
  rec.model_id = std::move(resp.model_id);
  rec.selector = selector;
  rec.template_id = payload.template_id;
  rec.item_id = std::move(item_id);
  return rec;
}

std::vector<double> normalize(std::span<const double> v) {
  double n2 = 0;
  for (double x : v) n2 += x * x;
  double n = std::sqrt(n2);
  if (!(n > 0) || !std::isfinite(n)) throw ZeroVector("cannot normalize a vector with norm " + std::to_string(n));
  std::vector<double> out(v.begin(), v.end());
  for (auto& x : out) x /= n;
  return out;
}

}  // namespace meol::embed

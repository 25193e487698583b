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

#include <span>
#include <string>
#include <vector>

#include "meol/backend/backend.hpp"
#include "meol/embed/prompt.hpp"

namespace meol::embed {

/// layer_offset 0 is the last layer, 1 the penultimate.
struct HiddenStateSelector {
  int layer_offset = 1;
  std::string pooling = std::string(backend::kPoolingLastToken);

  bool operator==(const HiddenStateSelector&) const = default;
};

struct EmbeddingRecord {
  std::vector<double> vector;
  int dim = 0;
  std::string model_id;
  HiddenStateSelector selector;
  std::string template_id;
  std::string item_id;

  bool operator==(const EmbeddingRecord&) const = default;
};

/// The wire request for a payload. Images travel as base64 PNG of the
/// attached raster.
backend::EmbedRequest make_request(const PromptPayload& payload, const HiddenStateSelector& selector,
                                   std::string request_id);

EmbeddingRecord embed(backend::Backend& backend, const PromptPayload& payload, const HiddenStateSelector& selector,
                      std::string item_id = {});

/// Unit-length copy; throws ZeroVector for a zero or non-finite norm.
std::vector<double> normalize(std::span<const double> v);

}  // namespace meol::embed

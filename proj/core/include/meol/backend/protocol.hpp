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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meol::backend {

inline constexpr std::string_view kPoolingLastToken = "last_token";
inline constexpr std::string_view kPoolingMean = "mean_all_tokens";
/// Frames above this size are refused on both ends.
inline constexpr std::size_t kMaxFrameBytes = 64u << 20;

struct EmbedRequest {
  std::string text;
  std::optional<std::string> image_b64;
  std::optional<std::string> svg_code;
  int layer_offset = 1;
  std::string pooling = std::string(kPoolingLastToken);
  std::string request_id;

  bool operator==(const EmbedRequest&) const = default;
};

struct EmbedResponse {
  std::vector<double> vector;
  int dim = 0;
  std::string model_id;
  int layer_count = 0;
  int token_count = 0;
  std::string request_id;

  bool operator==(const EmbedResponse&) const = default;
};

bool is_valid_pooling(std::string_view pooling);

/// JSON bodies with keys in sorted order and absent optionals omitted.
std::string request_to_json(const EmbedRequest& req);
EmbedRequest request_from_json(std::string_view body);
std::string response_to_json(const EmbedResponse& resp);
/// A body of the form {"error": "...", "request_id": "..."} raises
/// BackendRejected with the server's message.
EmbedResponse response_from_json(std::string_view body);
std::string error_to_json(std::string_view message, std::string_view request_id);

/// 4-byte big-endian length prefix followed by the body.
std::string frame(std::string_view body);
/// Inverse of frame; the input must be exactly one frame.
std::string unframe(std::string_view bytes);
std::uint32_t read_frame_length(const unsigned char header[4]);

/// Framed request bytes.
std::string encode_request(const EmbedRequest& req);
EmbedRequest decode_request(std::string_view bytes);
std::string encode_response(const EmbedResponse& resp);
/// Decodes a framed response; if `expected_id` is given the echoed
/// request_id must match it.
EmbedResponse decode_response(std::string_view bytes,
                              std::optional<std::string_view> expected_id = std::nullopt);

/// Checks the response against the request it answers.
void check_response(const EmbedRequest& req, const EmbedResponse& resp);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);

}  // namespace meol::backend

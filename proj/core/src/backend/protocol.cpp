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

#include "meol/backend/protocol.hpp"

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <json.hpp>

#include "meol/error.hpp"

namespace meol::backend {

using nlohmann::json;

namespace {

json parse_body(std::string_view body) {
  json j;
  try {
    j = json::parse(body.begin(), body.end());
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("body is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("body is not a JSON object");
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ProtocolError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw ProtocolError(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ProtocolError(std::string("field \"") + name + "\" must be a string");
  return it->get<std::string>();
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw ProtocolError(std::string("field \"") + name + "\" must be an integer");
  auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) throw ProtocolError(std::string("field \"") + name + "\" out of range");
  return static_cast<int>(x);
}

}  // namespace

bool is_valid_pooling(std::string_view pooling) { return pooling == kPoolingLastToken || pooling == kPoolingMean; }

std::string request_to_json(const EmbedRequest& req) {
  json j = json::object();
  j["text"] = req.text;
  if (req.image_b64) j["image_b64"] = *req.image_b64;
  if (req.svg_code) j["svg_code"] = *req.svg_code;
  j["layer_offset"] = req.layer_offset;
  j["pooling"] = req.pooling;
  j["request_id"] = req.request_id;
  return j.dump();
}

EmbedRequest request_from_json(std::string_view body) {
  json j = parse_body(body);
  EmbedRequest req;
  req.text = string_field(j, "text");
  req.image_b64 = optional_string(j, "image_b64");
  req.svg_code = optional_string(j, "svg_code");
  req.layer_offset = int_field(j, "layer_offset");
  req.pooling = string_field(j, "pooling");
  req.request_id = string_field(j, "request_id");
  if (req.layer_offset < 0) throw ProtocolError("layer_offset must be >= 0");
  if (!is_valid_pooling(req.pooling)) throw ProtocolError("unknown pooling \"" + req.pooling + "\"");
  return req;
}

std::string response_to_json(const EmbedResponse& resp) {
  json j = json::object();
  j["vector"] = resp.vector;
  j["dim"] = resp.dim;
  j["model_id"] = resp.model_id;
  j["layer_count"] = resp.layer_count;
  j["token_count"] = resp.token_count;
  j["request_id"] = resp.request_id;
  return j.dump();
}

EmbedResponse response_from_json(std::string_view body) {
  json j = parse_body(body);
  if (auto it = j.find("error"); it != j.end()) {
    std::string msg = it->is_string() ? it->get<std::string>() : it->dump();
    throw BackendRejected(msg);
  }
  EmbedResponse resp;
  const json& vec = field(j, "vector");
  if (!vec.is_array()) throw ProtocolError("field \"vector\" must be an array");
  resp.vector.reserve(vec.size());
  for (const auto& v : vec) {
    if (!v.is_number()) throw ProtocolError("field \"vector\" must contain only numbers");
    resp.vector.push_back(v.get<double>());
  }
  resp.dim = int_field(j, "dim");
  resp.model_id = string_field(j, "model_id");
  resp.layer_count = int_field(j, "layer_count");
  resp.token_count = int_field(j, "token_count");
  resp.request_id = string_field(j, "request_id");
  if (resp.dim < 0 || static_cast<std::size_t>(resp.dim) != resp.vector.size())
    throw ProtocolError("dim " + std::to_string(resp.dim) + " but vector has " + std::to_string(resp.vector.size()) +
                        " entries");
  if (resp.layer_count <= 0) throw ProtocolError("layer_count must be positive");
  if (resp.token_count < 0) throw ProtocolError("token_count must be non-negative");
  return resp;
}

std::string error_to_json(std::string_view message, std::string_view request_id) {
  json j = json::object();
  j["error"] = std::string(message);
  j["request_id"] = std::string(request_id);
  return j.dump();
}

std::string frame(std::string_view body) {
  if (body.size() > kMaxFrameBytes) throw ProtocolError("frame of " + std::to_string(body.size()) + " bytes exceeds limit");
  auto n = static_cast<std::uint32_t>(body.size());
  std::string out;
  out.reserve(body.size() + 4);
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out.append(body);
  return out;
}

std::uint32_t read_frame_length(const unsigned char h[4]) {
  return (std::uint32_t{h[0]} << 24) | (std::uint32_t{h[1]} << 16) | (std::uint32_t{h[2]} << 8) | std::uint32_t{h[3]};
}

std::string unframe(std::string_view bytes) {
  if (bytes.size() < 4) throw ProtocolError("truncated frame header");
  auto n = read_frame_length(reinterpret_cast<const unsigned char*>(bytes.data()));
  if (n > kMaxFrameBytes) throw ProtocolError("frame length " + std::to_string(n) + " exceeds limit");
  if (bytes.size() - 4 != n)
    throw ProtocolError("frame declares " + std::to_string(n) + " bytes but carries " + std::to_string(bytes.size() - 4));
  return std::string(bytes.substr(4));
}

std::string encode_request(const EmbedRequest& req) { return frame(request_to_json(req)); }

EmbedRequest decode_request(std::string_view bytes) { return request_from_json(unframe(bytes)); }

std::string encode_response(const EmbedResponse& resp) { return frame(response_to_json(resp)); }

EmbedResponse decode_response(std::string_view bytes, std::optional<std::string_view> expected_id) {
  EmbedResponse resp = response_from_json(unframe(bytes));
  if (expected_id && resp.request_id != *expected_id)
    throw ProtocolError("request_id echo mismatch: sent \"" + std::string(*expected_id) + "\", got \"" +
                        resp.request_id + "\"");
  return resp;
}

void check_response(const EmbedRequest& req, const EmbedResponse& resp) {
  if (resp.request_id != req.request_id)
    throw ProtocolError("request_id echo mismatch: sent \"" + req.request_id + "\", got \"" + resp.request_id + "\"");
  if (resp.layer_count <= req.layer_offset)
    throw ProtocolError("layer_count " + std::to_string(resp.layer_count) + " does not cover layer_offset " +
                        std::to_string(req.layer_offset));
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::vector<std::uint8_t>::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

}  // namespace meol::backend

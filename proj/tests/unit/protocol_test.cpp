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

#include <gtest/gtest.h>

#include <random>

#include "meol/backend/protocol.hpp"
#include "meol/error.hpp"

namespace meol::backend {
namespace {

std::string random_string(std::mt19937_64& rng, std::size_t max_len) {
  static const std::string alphabet = "abcXYZ 012<>\"\\/\n\t{}[]:,\xc3\xa9\xe2\x82\xac";
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
  std::string s;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    char c = alphabet[pick(rng)];
    // keep multibyte sequences whole
    if (static_cast<unsigned char>(c) >= 0x80) continue;
    s += c;
  }
  return s;
}

EmbedRequest random_request(std::mt19937_64& rng) {
  EmbedRequest r;
  r.text = random_string(rng, 40);
  if (rng() % 2) r.image_b64 = base64_encode({static_cast<std::uint8_t>(rng()), 0, 255});
  if (rng() % 2) r.svg_code = "<svg>" + random_string(rng, 30) + "</svg>";
  r.layer_offset = static_cast<int>(rng() % 33);
  r.pooling = std::string(rng() % 2 ? kPoolingLastToken : kPoolingMean);
  r.request_id = "r" + std::to_string(rng() % 100000);
  return r;
}

TEST(Protocol, RequestRoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto r = random_request(rng);
    EXPECT_EQ(request_from_json(request_to_json(r)), r);
    EXPECT_EQ(decode_request(encode_request(r)), r);
  }
}

TEST(Protocol, ResponseRoundTripProperty) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    EmbedResponse r;
    r.dim = static_cast<int>(rng() % 20);
    for (int d = 0; d < r.dim; ++d) r.vector.push_back(g(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10));
    r.model_id = "m" + std::to_string(i);
    r.layer_count = 1 + static_cast<int>(rng() % 40);
    r.token_count = static_cast<int>(rng() % 1000);
    r.request_id = "id-" + std::to_string(i);
    EXPECT_EQ(response_from_json(response_to_json(r)), r);
    EXPECT_EQ(decode_response(encode_response(r), r.request_id), r);
  }
}

TEST(Protocol, SortedKeysAndOmittedOptionals) {
  EmbedRequest r;
  r.text = "hi";
  r.request_id = "a";
  EXPECT_EQ(request_to_json(r), R"({"layer_offset":1,"pooling":"last_token","request_id":"a","text":"hi"})");
  r.svg_code = "<svg/>";
  EXPECT_EQ(request_to_json(r),
            R"({"layer_offset":1,"pooling":"last_token","request_id":"a","svg_code":"<svg/>","text":"hi"})");
}

TEST(Protocol, FrameIsBigEndianLengthPrefixed) {
  std::string f = frame("abc");
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(f.substr(0, 4), std::string("\0\0\0\3", 4));
  EXPECT_EQ(unframe(f), "abc");
  std::string big(300, 'x');
  auto fb = frame(big);
  EXPECT_EQ(static_cast<unsigned char>(fb[2]), 1);
  EXPECT_EQ(static_cast<unsigned char>(fb[3]), 44);
  EXPECT_EQ(read_frame_length(reinterpret_cast<const unsigned char*>(fb.data())), 300u);
}

TEST(Protocol, FramingErrors) {
  EXPECT_THROW(unframe("\0\0"), ProtocolError);
  EXPECT_THROW(unframe(std::string("\0\0\0\5abc", 7)), ProtocolError);
  EXPECT_THROW(unframe(std::string("\0\0\0\1abc", 7)), ProtocolError);
  EXPECT_THROW(unframe(std::string("\x7f\xff\xff\xff", 4)), ProtocolError);
}

TEST(Protocol, MalformedBodies) {
  EXPECT_THROW(request_from_json("{"), ProtocolError);
  EXPECT_THROW(request_from_json("[]"), ProtocolError);
  EXPECT_THROW(request_from_json(R"({"text":"x","layer_offset":1,"pooling":"last_token"})"), ProtocolError);
  EXPECT_THROW(request_from_json(R"({"text":"x","layer_offset":-1,"pooling":"last_token","request_id":"a"})"),
               ProtocolError);
  EXPECT_THROW(request_from_json(R"({"text":"x","layer_offset":1,"pooling":"max","request_id":"a"})"), ProtocolError);
  EXPECT_THROW(request_from_json(R"({"text":5,"layer_offset":1,"pooling":"last_token","request_id":"a"})"),
               ProtocolError);
  EXPECT_THROW(response_from_json(R"({"vector":[1,2],"dim":3,"model_id":"m","layer_count":2,"token_count":1,)"
                                  R"("request_id":"a"})"),
               ProtocolError);
  EXPECT_THROW(response_from_json(R"({"vector":[1,"x"],"dim":2,"model_id":"m","layer_count":2,"token_count":1,)"
                                  R"("request_id":"a"})"),
               ProtocolError);
}

TEST(Protocol, ErrorBodyBecomesBackendRejected) {
  auto body = error_to_json("layer_offset 40 outside [0, 33)", "r9");
  try {
    response_from_json(body);
    FAIL() << "expected BackendRejected";
  } catch (const BackendRejected& e) {
    EXPECT_NE(std::string(e.what()).find("layer_offset 40"), std::string::npos);
  }
}

TEST(Protocol, EchoAndLayerCoverageChecks) {
  EmbedResponse resp{{1.0}, 1, "m", 33, 1, "a"};
  EXPECT_THROW(decode_response(encode_response(resp), std::string_view("b")), ProtocolError);
  EmbedRequest req;
  req.request_id = "a";
  req.layer_offset = 32;
  EXPECT_NO_THROW(check_response(req, resp));
  req.layer_offset = 33;
  EXPECT_THROW(check_response(req, resp), ProtocolError);
  req.layer_offset = 0;
  req.request_id = "z";
  EXPECT_THROW(check_response(req, resp), ProtocolError);
}

TEST(Protocol, Base64) {
  EXPECT_EQ(base64_encode({}), "");
  EXPECT_EQ(base64_encode({'f'}), "Zg==");
  EXPECT_EQ(base64_encode({'f', 'o'}), "Zm8=");
  EXPECT_EQ(base64_encode({'f', 'o', 'o', 'b', 'a', 'r'}), "Zm9vYmFy");
}

TEST(Protocol, PoolingNames) {
  EXPECT_TRUE(is_valid_pooling("last_token"));
  EXPECT_TRUE(is_valid_pooling("mean_all_tokens"));
  EXPECT_FALSE(is_valid_pooling("mean"));
}

}  // namespace
}  // namespace meol::backend

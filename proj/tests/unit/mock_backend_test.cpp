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

#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "meol/backend/backend.hpp"
#include "meol/embed/embed.hpp"
#include "meol/embed/template_registry.hpp"
#include "meol/error.hpp"

namespace meol::backend {
namespace {

// Reference FNV-1a 64 and sparse trigram cosine, written without the library.
std::uint64_t ref_fnv(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::map<std::uint64_t, double> ref_counts(const std::string& s) {
  std::map<std::uint64_t, double> m;
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) m[ref_fnv(s.substr(i, 3)) % 512] += 1;
  return m;
}

double ref_cosine(const std::string& a, const std::string& b) {
  auto ma = ref_counts(a), mb = ref_counts(b);
  double dot = 0, na = 0, nb = 0;
  for (auto& [k, v] : ma) {
    na += v * v;
    if (auto it = mb.find(k); it != mb.end()) dot += v * it->second;
  }
  for (auto& [k, v] : mb) nb += v * v;
  return dot / std::sqrt(na * nb);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

EmbedRequest text_req(std::string t) {
  EmbedRequest r;
  r.text = std::move(t);
  r.request_id = "x";
  return r;
}

TEST(MockHash, DeterministicAndUnitNorm) {
  EmbedRequest r = text_req("hello");
  auto first = mock_hash_embed(r);
  for (int i = 0; i < 1000; ++i) {
    r.request_id = "id" + std::to_string(i);
    auto again = mock_hash_embed(r);
    ASSERT_EQ(again.vector, first.vector);
    ASSERT_EQ(again.request_id, r.request_id);
  }
  EXPECT_EQ(first.dim, kMockHashDim);
  EXPECT_EQ(first.layer_count, kMockLayerCount);
  EXPECT_NEAR(dot(first.vector, first.vector), 1.0, 1e-12);
}

TEST(MockHash, EveryFieldButRequestIdMatters) {
  EmbedRequest base = text_req("hello");
  auto v0 = mock_hash_embed(base).vector;
  auto changed = [&](auto mut) {
    EmbedRequest r = base;
    mut(r);
    return mock_hash_embed(r).vector != v0;
  };
  EXPECT_TRUE(changed([](EmbedRequest& r) { r.text = "hellp"; }));
  EXPECT_TRUE(changed([](EmbedRequest& r) { r.svg_code = ""; }));
  EXPECT_TRUE(changed([](EmbedRequest& r) { r.image_b64 = ""; }));
  EXPECT_TRUE(changed([](EmbedRequest& r) { r.layer_offset = 2; }));
  EXPECT_TRUE(changed([](EmbedRequest& r) { r.pooling = std::string(kPoolingMean); }));
  EXPECT_FALSE(changed([](EmbedRequest& r) { r.request_id = "other"; }));
  EXPECT_NE(mock_hash_embed(base, 5).vector, v0);
}

TEST(MockHash, RejectsBadSelectors) {
  auto r = text_req("a");
  r.layer_offset = kMockLayerCount;
  EXPECT_THROW(mock_hash_embed(r), BackendRejected);
  r.layer_offset = 0;
  r.pooling = "max";
  EXPECT_THROW(mock_semantic_embed(r), BackendRejected);
}

TEST(MockSemantic, MatchesReferenceCosine) {
  std::mt19937_64 rng(2026);
  const std::string words[] = {"cat", "dog", "bird", "circle", "<path d=\"M0 0\"/>", "red", "blue", "house", "tree",
                               "sun", "car", "fill", "stroke", "wing", "roof"};
  for (int i = 0; i < 100; ++i) {
    auto sentence = [&] {
      std::string s;
      for (int w = 0, n = 2 + static_cast<int>(rng() % 8); w < n; ++w) s += words[rng() % std::size(words)] + " ";
      return s;
    };
    std::string a = sentence(), b = sentence(), svg = "<svg>" + sentence() + "</svg>";
    EmbedRequest ra = text_req(a), rb = text_req(b);
    rb.svg_code = svg;
    double got = dot(mock_semantic_embed(ra).vector, mock_semantic_embed(rb).vector);
    ASSERT_NEAR(got, ref_cosine(a, b + "\n" + svg), 1e-9) << a << " | " << b;
  }
}

TEST(MockSemantic, BucketsAgreeWithReference) {
  for (std::string t : {"abc", "<sv", "\n<s", "   "}) EXPECT_EQ(trigram_bucket(t), ref_fnv(t) % 512) << t;
}

TEST(MockSemantic, RelatedTextsScoreHigher) {
  auto e = [](const char* t) { return mock_semantic_embed(text_req(t)).vector; };
  EXPECT_GT(dot(e("a small cat sitting"), e("a cat sitting down")), dot(e("a small cat sitting"), e("a dog barking")));
}

TEST(MockSemantic, ShortInputMapsToFirstBasisVector) {
  auto v = mock_semantic_embed(text_req("ab")).vector;
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(dot(v, v), 1.0);
}

TEST(MockSemantic, IgnoresSelectorAndImage) {
  auto r = text_req("some text here");
  auto v = mock_semantic_embed(r).vector;
  r.layer_offset = 5;
  r.pooling = std::string(kPoolingMean);
  r.image_b64 = "AAAA";
  EXPECT_EQ(mock_semantic_embed(r).vector, v);
}

TEST(MakeBackend, Kinds) {
  EXPECT_EQ(make_backend("mock-hash")->name(), "mock-hash");
  EXPECT_EQ(make_backend("mock-semantic")->name(), "mock-semantic");
  EXPECT_THROW(make_backend("gpu"), ConfigError);
}

class ScriptedBackend : public Backend {
 public:
  std::function<void(EmbedResponse&)> tweak;
  EmbedResponse embed(const EmbedRequest& req) override {
    auto r = mock_hash_embed(req);
    if (tweak) tweak(r);
    return r;
  }
  std::string name() const override { return "scripted"; }
};

TEST(Embed, RecordCarriesProvenance) {
  MockSemanticBackend b;
  auto payload = embed::render_prompt(embed::TemplateRegistry::builtin().get("meol_text"),
                                      embed::ModalityInput::of_text("a bird"));
  auto rec = embed::embed(b, payload, {3, std::string(kPoolingMean)}, "item-7");
  EXPECT_EQ(rec.dim, kMockSemanticDim);
  EXPECT_EQ(rec.model_id, "mock-semantic");
  EXPECT_EQ(rec.template_id, "meol_text");
  EXPECT_EQ(rec.item_id, "item-7");
  EXPECT_EQ(rec.selector.layer_offset, 3);
  auto req = embed::make_request(payload, rec.selector, "q");
  EXPECT_EQ(rec.vector, mock_semantic_embed(req).vector);
}

TEST(Embed, ValidatesResponses) {
  ScriptedBackend b;
  auto payload = embed::render_prompt(embed::TemplateRegistry::builtin().get("meol_text"),
                                      embed::ModalityInput::of_text("x"));
  b.tweak = [](EmbedResponse& r) { r.vector[3] = std::numeric_limits<double>::quiet_NaN(); };
  EXPECT_THROW(embed::embed(b, payload, {}), NonFiniteVector);
  b.tweak = [](EmbedResponse& r) { r.request_id = "forged"; };
  EXPECT_THROW(embed::embed(b, payload, {}), ProtocolError);
  b.tweak = [](EmbedResponse& r) { r.dim = 3; };
  EXPECT_THROW(embed::embed(b, payload, {}), ProtocolError);
  b.tweak = nullptr;
  EXPECT_THROW(embed::embed(b, payload, {-1, "last_token"}), BackendRejected);
  EXPECT_THROW(embed::embed(b, payload, {1, "max"}), BackendRejected);
}

TEST(Embed, Normalize) {
  auto n = embed::normalize(std::vector<double>{3, 4});
  EXPECT_DOUBLE_EQ(n[0], 0.6);
  EXPECT_DOUBLE_EQ(n[1], 0.8);
  EXPECT_THROW(embed::normalize(std::vector<double>{0, 0}), ZeroVector);
}

}  // namespace
}  // namespace meol::backend

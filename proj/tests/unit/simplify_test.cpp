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

#include "meol/svg/raster.hpp"
#include "meol/svg/simplify.hpp"
#include "test_support.hpp"

namespace meol::svg {
namespace {

using testing::corpus_files;
using testing::read_file;

// Independent tree walk: empty <g> elements that carry no referenced id.
std::size_t count_empty_groups(const ElementNode& n) {
  std::size_t c = 0;
  for (const auto& k : n.children) {
    if (k.local_name() == "g" && k.children.empty()) ++c;
    c += count_empty_groups(k);
  }
  return c;
}

TEST(Simplify, FlattensBareNestedGroups) {
  auto out = simplify(parse_svg("<svg><g><g><rect/></g></g></svg>"));
  EXPECT_EQ(serialize_svg(out), "<svg><rect/></svg>");
}

TEST(Simplify, DropsIdentityTransform) {
  auto out = simplify(parse_svg("<svg><g transform=\"translate(0,0)\"><circle r=\"1\"/></g></svg>"));
  EXPECT_EQ(serialize_svg(out), "<svg><circle r=\"1\"/></svg>");
}

TEST(Simplify, IdentityTransformForms) {
  for (const char* t : {"translate(0,0)", "translate(0)", "scale(1)", "scale(1,1)", "rotate(0)", "rotate(0 5 5)",
                        "matrix(1 0 0 1 0 0)", " translate( 0 , 0 ) scale(1) ", ""})
    EXPECT_TRUE(is_identity_transform(t)) << t;
  for (const char* t : {"translate(1,0)", "scale(2)", "rotate(90)", "matrix(1 0 0 1 0 1)", "skewX(10)", "bogus(0)"})
    EXPECT_FALSE(is_identity_transform(t)) << t;
}

TEST(Simplify, MergesSingleChildTransform) {
  auto doc = parse_svg(
      "<svg viewBox=\"0 0 100 100\"><g transform=\"translate(30,30)\"><rect width=\"40\" height=\"40\"/></g></svg>");
  auto out = simplify(doc);
  EXPECT_EQ(serialize_svg(out),
            "<svg viewBox=\"0 0 100 100\"><rect width=\"40\" height=\"40\" transform=\"translate(30,30)\"/></svg>");
}

TEST(Simplify, MergeActionComposesOuterBeforeInner) {
  auto doc = parse_svg(
      "<svg viewBox=\"0 0 100 100\"><g transform=\"translate(50,0)\"><rect transform=\"scale(0.5)\" width=\"40\" "
      "height=\"40\"/></g></svg>");
  // the automatic pass leaves a transformed child alone
  EXPECT_EQ(simplify_structure(doc), doc);
  ElementNode root = doc.root();
  ASSERT_TRUE(apply_action(root, {0}, SimplifyAction::MergeTransform));
  EXPECT_EQ(*root.children[0].children[0].attr("transform"), "translate(50,0) scale(0.5)");
  SvgDocument merged(root, "");
  EXPECT_LE(visual_distance(rasterize(doc), rasterize(merged)), kVisualTolerance);
}

TEST(Simplify, KeepsGroupsWithPresentationAttributes) {
  auto doc = parse_svg("<svg><g fill=\"red\"><rect width=\"1\" height=\"1\"/><rect/></g></svg>");
  EXPECT_EQ(simplify(doc), doc);
}

TEST(Simplify, KeepsReferencedEmptyNodes) {
  auto doc = parse_svg("<svg><defs><linearGradient id=\"lg\"/></defs><rect fill=\"url(#lg)\"/></svg>");
  EXPECT_EQ(simplify(doc), doc);
}

TEST(Simplify, RemovesExactlyTheEmptyGroupsOfCorpusEntry) {
  auto doc = parse_svg(read_file(testing::data_dir() / "corpus" / "02_empty_groups.svg"));
  std::size_t empties = count_empty_groups(doc.root());
  ASSERT_EQ(empties, 3u);
  EXPECT_EQ(simplify(doc).element_count(), doc.element_count() - empties);
}

TEST(Simplify, ApplyActionIsLiteral) {
  auto doc = parse_svg("<svg><g fill=\"red\"><rect/><circle/></g></svg>");
  ElementNode root = doc.root();
  EXPECT_TRUE(apply_action(root, {0}, SimplifyAction::Flatten));
  EXPECT_EQ(serialize_element(root), "<svg><rect/><circle/></svg>");
  EXPECT_FALSE(apply_action(root, {0}, SimplifyAction::Flatten));
  EXPECT_FALSE(apply_action(root, {7}, SimplifyAction::RemoveEmpty));
  EXPECT_TRUE(apply_action(root, {1}, SimplifyAction::RemoveEmpty));
  EXPECT_EQ(serialize_element(root), "<svg><rect/></svg>");
}

TEST(Simplify, ActionNames) {
  EXPECT_EQ(parse_action("flatten"), SimplifyAction::Flatten);
  EXPECT_EQ(parse_action("T2"), SimplifyAction::RemoveEmpty);
  EXPECT_EQ(parse_action("drop_identity_transform"), SimplifyAction::DropIdentityTransform);
  EXPECT_EQ(parse_action("T4"), SimplifyAction::MergeTransform);
  EXPECT_FALSE(parse_action("explode"));
  for (auto a : {SimplifyAction::Flatten, SimplifyAction::RemoveEmpty, SimplifyAction::DropIdentityTransform,
                 SimplifyAction::MergeTransform})
    EXPECT_EQ(parse_action(action_name(a)), a);
}

TEST(SimplifyCorpus, PropertiesHoldOnEveryFile) {
  for (const auto& f : corpus_files()) {
    SCOPED_TRACE(f.filename().string());
    auto doc = parse_svg(read_file(f));
    auto once = simplify(doc);
    EXPECT_EQ(simplify(once), once);
    EXPECT_LE(once.element_count(), doc.element_count());
    EXPECT_LE(visual_distance(rasterize(doc), rasterize(once)), kVisualTolerance);
    EXPECT_NO_THROW(check_unique_ids(once.root()));
  }
}

TEST(SimplifyCorpus, PropagatesRenderUnsupported) {
  auto doc = parse_svg("<svg><g><g><text>x</text></g></g></svg>");
  EXPECT_THROW(simplify(doc), RenderUnsupported);
}

}  // namespace
}  // namespace meol::svg

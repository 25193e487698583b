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

#include "meol/svg/ids.hpp"

namespace meol::svg {
namespace {

TEST(NonDescriptiveId, EditorDefaults) {
  for (const char* id : {"Layer_1", "path123", "g", "g5", "group-2", "SVG_1", "rect", "circle_12", "shape7", "vector",
                         "XMLID", "xmlid_44", "123", "_", "1_2"})
    EXPECT_TRUE(is_non_descriptive_id(id)) << id;
}

TEST(NonDescriptiveId, Meaningful) {
  for (const char* id : {"bird", "bird1", "left_eye", "house_roof", "pathway", "layer_top", "g5a", "XMLID_1_", "rect-1-a"})
    EXPECT_FALSE(is_non_descriptive_id(id)) << id;
}

TEST(Inventory, ClassifiesGroupsAndShapes) {
  auto doc = parse_svg(
      "<svg><g id=\"Layer_1\"><path id=\"path123\"/><circle id=\"bird1\"/><rect/></g><defs><linearGradient "
      "id=\"lg\"/></defs></svg>");
  auto r = inventory_ids(doc);
  ASSERT_EQ(r.non_descriptive.size(), 2u);
  EXPECT_EQ(r.non_descriptive[0], (IdEntry{{0}, "Layer_1"}));
  EXPECT_EQ(r.non_descriptive[1], (IdEntry{{0, 0}, "path123"}));
  ASSERT_EQ(r.descriptive.size(), 1u);
  EXPECT_EQ(r.descriptive[0].id, "bird1");
  ASSERT_EQ(r.missing.size(), 1u);
  EXPECT_EQ(r.missing[0], (NodePath{0, 2}));
}

TEST(Inventory, MissingGroupId) {
  auto r = inventory_ids(parse_svg("<svg><g/></svg>"));
  ASSERT_EQ(r.missing.size(), 1u);
  EXPECT_TRUE(r.descriptive.empty());
}

TEST(References, CollectsUrlAndHref) {
  auto doc = parse_svg(
      "<svg><rect fill=\"url(#a)\" style=\"stroke: url( '#b' )\"/><use href=\"#c\"/><use xlink:href=\"#d\"/>"
      "<g clip-path=\"url(#e)\"/></svg>");
  EXPECT_EQ(referenced_ids(doc.root()), (std::set<std::string>{"a", "b", "c", "d", "e"}));
}

TEST(References, RenameUpdatesEveryReference) {
  auto doc = parse_svg(
      "<svg><linearGradient id=\"g1\"/><rect fill=\"url(#g1)\"/><use href=\"#g1\"/><rect fill=\"url(#g10)\"/></svg>");
  ElementNode root = doc.root();
  rename_id_references(root, "g1", "sky");
  EXPECT_EQ(*root.children[1].attr("fill"), "url(#sky)");
  EXPECT_EQ(*root.children[2].attr("href"), "#sky");
  EXPECT_EQ(*root.children[3].attr("fill"), "url(#g10)");
}

TEST(References, MapRenameDoesNotChain) {
  auto doc = parse_svg("<svg><rect fill=\"url(#a)\"/><rect fill=\"url(#b)\"/></svg>");
  ElementNode root = doc.root();
  rename_id_references(root, std::map<std::string, std::string>{{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(*root.children[0].attr("fill"), "url(#b)");
  EXPECT_EQ(*root.children[1].attr("fill"), "url(#c)");
}

}  // namespace
}  // namespace meol::svg

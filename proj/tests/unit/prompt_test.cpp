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

#include "meol/embed/embed.hpp"
#include "meol/embed/template_registry.hpp"
#include "test_support.hpp"

namespace meol::embed {
namespace {

using testing::data_dir;
using testing::read_file;

const std::string kText = "What does this SVG image likely represent? Global connectivity issues";
const std::string kSvg = "<svg xmlns=\"http://www.w3.org/2000/svg\"><circle r=\"4\"/></svg>";

ModalityInput input_for(Modality m) {
  svg::RasterImage img = svg::RasterImage::blank(2, 2);
  switch (m) {
    case Modality::Text: return ModalityInput::of_text(kText);
    case Modality::Image: return ModalityInput::of_image(img);
    case Modality::Svg: return ModalityInput::of_svg(kSvg);
    case Modality::ImageSvg: return ModalityInput::of_image_svg(img, kSvg);
  }
  return {};
}

std::string golden(const std::string& id) { return read_file(data_dir() / "golden" / "prompts" / (id + ".txt")); }

class BuiltinGolden : public ::testing::TestWithParam<std::string> {};

TEST_P(BuiltinGolden, RendersByteForByte) {
  auto reg = TemplateRegistry::builtin();
  auto t = reg.get(GetParam());
  auto payload = render_prompt(t, input_for(t.modality));
  EXPECT_EQ(payload.text_segment + "\n", golden(GetParam()));
  EXPECT_EQ(payload.template_id, GetParam());
}

INSTANTIATE_TEST_SUITE_P(AllTemplates, BuiltinGolden,
                         ::testing::Values("meol_text", "meol_image", "meol_svg", "meol_image_svg", "prompteol_text",
                                           "prompteol_image", "prompteol_svg", "prompteol_image_svg", "keeol_text",
                                           "keeol_image", "keeol_svg", "keeol_image_svg", "meol_text@two_words",
                                           "meol_text@three_words", "meol_text@four_words", "meol_text@sentence",
                                           "meol_svg@sentence"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s)
                             if (c == '@') c = '_';
                           return s;
                         });

TEST(PromptGolden, PromptEolBaselineLiteral) {
  auto t = TemplateRegistry::builtin().get("prompteol_text");
  EXPECT_EQ(render_prompt(t, ModalityInput::of_text("[text]")).text_segment + "\n",
            golden("prompteol_text_placeholder"));
}

TEST(PromptGolden, LengthVariantRowSet) {
  std::vector<std::string> suffixes;
  for (auto v : {LengthVariant::OneWord, LengthVariant::TwoWords, LengthVariant::ThreeWords, LengthVariant::FourWords,
                 LengthVariant::Sentence})
    suffixes.emplace_back(variant_suffix(v));
  EXPECT_EQ(suffixes, (std::vector<std::string>{"in one word:", "in two words:", "in three words:", "in four words:",
                                                "in one sentence:"}));
}

TEST(Prompt, ImagePayloadCarriesAttachment) {
  auto img = svg::RasterImage::blank(3, 3);
  auto p = render_prompt(TemplateRegistry::builtin().get("meol_image_svg"), ModalityInput::of_image_svg(img, kSvg));
  ASSERT_TRUE(p.image_attachment);
  EXPECT_EQ(*p.image_attachment, img);
  EXPECT_EQ(p.svg_segment, kSvg);
}

TEST(Prompt, ModalityMismatch) {
  auto reg = TemplateRegistry::builtin();
  EXPECT_THROW(render_prompt(reg.get("meol_svg"), ModalityInput::of_text("x")), ModalityMismatch);
  ModalityInput none;
  EXPECT_THROW(none.modality(), ModalityMismatch);
  ModalityInput text_and_svg = ModalityInput::of_svg(kSvg);
  text_and_svg.text = "x";
  EXPECT_THROW(text_and_svg.modality(), ModalityMismatch);
}

TEST(Prompt, ValidateRejectsBrokenSkeletons) {
  PromptTemplate t{"bad", Family::Meol, Modality::Text, "This {X} {X} {instruction} in one word:", "means",
                   LengthVariant::OneWord};
  EXPECT_THROW(t.validate(), TemplateError);
  t.skeleton = "This {X} in one word:";
  EXPECT_THROW(t.validate(), TemplateError);
  t.skeleton = "This {X} {instruction} briefly:";
  EXPECT_THROW(t.validate(), TemplateError);
  t.skeleton = "This {X} {instruction} in one word:";
  EXPECT_NO_THROW(t.validate());
}

TEST(Prompt, InstructionBeforeInput) {
  PromptTemplate t{"inv", Family::PromptEol, Modality::Text, "{instruction}: {X}", "Summarize", LengthVariant::OneWord};
  EXPECT_EQ(render_prompt(t, ModalityInput::of_text("a {X} b")).text_segment, "Summarize: a {X} b");
}

TEST(Prompt, LengthVariantOfNonOneWordFails) {
  auto reg = TemplateRegistry::builtin();
  auto two = reg.get("meol_svg@two_words");
  EXPECT_EQ(two.length_variant, LengthVariant::TwoWords);
  EXPECT_THROW(make_length_variant(two, LengthVariant::Sentence), TemplateError);
  EXPECT_THROW(reg.get("prompteol_text@two_words"), TemplateError);
  EXPECT_THROW(reg.get("meol_text@nine_words"), TemplateError);
  EXPECT_THROW(reg.get("nope"), TemplateError);
}

TEST(Registry, IdsAndLookup) {
  auto reg = TemplateRegistry::builtin();
  EXPECT_EQ(reg.ids().size(), 12u);
  EXPECT_EQ(TemplateRegistry::id_for(Family::Meol, Modality::ImageSvg), "meol_image_svg");
  EXPECT_EQ(TemplateRegistry::id_for(Family::Meol, Modality::Svg, LengthVariant::FourWords), "meol_svg@four_words");
  EXPECT_TRUE(reg.contains("keeol_image"));
}

TEST(Registry, JsonOverlayInheritsMissingFields) {
  auto reg = TemplateRegistry::builtin();
  reg.merge_json(R"({"keeol_text": {"instruction": "means, in light of common knowledge,"},
                     "custom_svg": {"family": "meol", "modality": "svg",
                                    "skeleton": "Code: {X} {instruction} in one word:", "instruction": "draws"}})");
  EXPECT_EQ(render_prompt(reg.get("keeol_text"), ModalityInput::of_text("x")).text_segment,
            "This sentence: x means, in light of common knowledge, [MASK]");
  EXPECT_EQ(render_prompt(reg.get("custom_svg"), ModalityInput::of_svg("<svg/>")).text_segment,
            "Code: <svg/> draws in one word:");
  EXPECT_THROW(reg.merge_json(R"({"broken": {"modality": "svg", "skeleton": "no slots"}})"), TemplateError);
  EXPECT_THROW(reg.merge_json("[1,2]"), TemplateError);
}

TEST(Names, RoundTrip) {
  for (auto m : {Modality::Text, Modality::Image, Modality::Svg, Modality::ImageSvg})
    EXPECT_EQ(parse_modality(modality_name(m)), m);
  for (auto f : {Family::Meol, Family::PromptEol, Family::KeEol}) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_FALSE(parse_variant("seven_words"));
}

}  // namespace
}  // namespace meol::embed

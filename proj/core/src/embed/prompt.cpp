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

#include "meol/embed/prompt.hpp"

#include <array>

#include "meol/error.hpp"

namespace meol::embed {

namespace {

constexpr std::array<std::string_view, 4> kModalities = {"text", "image", "svg", "image_svg"};
constexpr std::array<std::string_view, 5> kVariants = {"one_word", "two_words", "three_words", "four_words",
                                                       "sentence"};
constexpr std::array<std::string_view, 5> kSuffixes = {"in one word:", "in two words:", "in three words:",
                                                       "in four words:", "in one sentence:"};
constexpr std::array<std::string_view, 3> kFamilies = {"meol", "prompteol", "keeol"};

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == s) return static_cast<E>(i);
  return std::nullopt;
}

}  // namespace

std::string_view modality_name(Modality m) { return kModalities[static_cast<std::size_t>(m)]; }
std::optional<Modality> parse_modality(std::string_view s) { return lookup<Modality>(kModalities, s); }
std::string_view variant_name(LengthVariant v) { return kVariants[static_cast<std::size_t>(v)]; }
std::optional<LengthVariant> parse_variant(std::string_view s) { return lookup<LengthVariant>(kVariants, s); }
std::string_view variant_suffix(LengthVariant v) { return kSuffixes[static_cast<std::size_t>(v)]; }
std::string_view family_name(Family f) { return kFamilies[static_cast<std::size_t>(f)]; }
std::optional<Family> parse_family(std::string_view s) { return lookup<Family>(kFamilies, s); }

void PromptTemplate::validate() const {
  if (template_id.empty()) throw TemplateError("template has an empty id");
  if (count_occurrences(skeleton, kInputSlot) != 1)
    throw TemplateError("template \"" + template_id + "\" must contain {X} exactly once");
  if (count_occurrences(skeleton, kInstructionSlot) != 1)
    throw TemplateError("template \"" + template_id + "\" must contain {instruction} exactly once");
  if (family == Family::Meol && !std::string_view(skeleton).ends_with(variant_suffix(length_variant)))
    throw TemplateError("template \"" + template_id + "\" must end with \"" +
                        std::string(variant_suffix(length_variant)) + "\"");
}

ModalityInput ModalityInput::of_text(std::string t) {
  ModalityInput in;
  in.text = std::move(t);
  return in;
}

ModalityInput ModalityInput::of_image(svg::RasterImage img) {
  ModalityInput in;
  in.image = std::move(img);
  return in;
}

ModalityInput ModalityInput::of_svg(std::string code) {
  ModalityInput in;
  in.svg = std::move(code);
  return in;
}

ModalityInput ModalityInput::of_image_svg(svg::RasterImage img, std::string code) {
  ModalityInput in;
  in.image = std::move(img);
  in.svg = std::move(code);
  return in;
}

Modality ModalityInput::modality() const {
  if (text && !image && !svg) return Modality::Text;
  if (!text && image && !svg) return Modality::Image;
  if (!text && !image && svg) return Modality::Svg;
  if (!text && image && svg) return Modality::ImageSvg;
  throw ModalityMismatch("input does not form a single modality (text, image, svg or image+svg)");
}

PromptPayload render_prompt(const PromptTemplate& tmpl, const ModalityInput& input) {
  tmpl.validate();
  Modality m = input.modality();
  if (m != tmpl.modality)
    throw ModalityMismatch("template \"" + tmpl.template_id + "\" expects " + std::string(modality_name(tmpl.modality)) +
                           " input, got " + std::string(modality_name(m)));
  std::string x;
  switch (m) {
    case Modality::Text: x = *input.text; break;
    case Modality::Image: x = std::string(kImageToken); break;
    case Modality::Svg: x = *input.svg; break;
    case Modality::ImageSvg: x = std::string(kImageToken) + " \"" + *input.svg + "\""; break;
  }
  const std::string& sk = tmpl.skeleton;
  std::size_t px = sk.find(kInputSlot), pi = sk.find(kInstructionSlot);
  std::string text;
  if (px < pi) {
    text = sk.substr(0, px) + x + sk.substr(px + kInputSlot.size(), pi - px - kInputSlot.size()) + tmpl.instruction +
           sk.substr(pi + kInstructionSlot.size());
  } else {
    text = sk.substr(0, pi) + tmpl.instruction + sk.substr(pi + kInstructionSlot.size(), px - pi - kInstructionSlot.size()) +
           x + sk.substr(px + kInputSlot.size());
  }

  PromptPayload p;
  p.text_segment = std::move(text);
  p.image_attachment = input.image;
  p.svg_segment = input.svg;
  p.template_id = tmpl.template_id;
  return p;
}

PromptTemplate make_length_variant(const PromptTemplate& base, LengthVariant variant) {
  constexpr std::string_view one = "in one word:";
  if (base.length_variant != LengthVariant::OneWord || !std::string_view(base.skeleton).ends_with(one))
    throw TemplateError("template \"" + base.template_id + "\" is not a one_word template");
  if (variant == LengthVariant::OneWord) return base;
  PromptTemplate t = base;
  t.skeleton.replace(t.skeleton.size() - one.size(), one.size(), variant_suffix(variant));
  t.length_variant = variant;
  t.template_id = base.template_id + "@" + std::string(variant_name(variant));
  return t;
}

}  // namespace meol::embed

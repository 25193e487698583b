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

#include <optional>
#include <string>
#include <string_view>

#include "meol/svg/raster.hpp"

namespace meol::embed {

enum class Modality { Text, Image, Svg, ImageSvg };
enum class LengthVariant { OneWord, TwoWords, ThreeWords, FourWords, Sentence };
enum class Family { Meol, PromptEol, KeEol };

std::string_view modality_name(Modality m);        // "text", "image", "svg", "image_svg"
std::optional<Modality> parse_modality(std::string_view s);
std::string_view variant_name(LengthVariant v);    // "one_word" ... "sentence"
std::optional<LengthVariant> parse_variant(std::string_view s);
std::string_view variant_suffix(LengthVariant v);  // "in one word:" ... "in one sentence:"
std::string_view family_name(Family f);            // "meol", "prompteol", "keeol"
std::optional<Family> parse_family(std::string_view s);

inline constexpr std::string_view kInputSlot = "{X}";
inline constexpr std::string_view kInstructionSlot = "{instruction}";
/// Stands in for the attached raster inside prompt text.
inline constexpr std::string_view kImageToken = "<image>";

struct PromptTemplate {
  std::string template_id;
  Family family = Family::Meol;
  Modality modality = Modality::Text;
  std::string skeleton;
  std::string instruction;
  LengthVariant length_variant = LengthVariant::OneWord;

  /// Throws TemplateError unless each slot occurs exactly once and
  /// mEOL skeletons end with the suffix of their length variant.
  void validate() const;

  bool operator==(const PromptTemplate&) const = default;
};

struct ModalityInput {
  std::optional<std::string> text;
  std::optional<svg::RasterImage> image;
  std::optional<std::string> svg;

  static ModalityInput of_text(std::string t);
  static ModalityInput of_image(svg::RasterImage img);
  static ModalityInput of_svg(std::string code);
  static ModalityInput of_image_svg(svg::RasterImage img, std::string code);

  /// Throws ModalityMismatch for combinations no template accepts.
  Modality modality() const;
};

struct PromptPayload {
  std::string text_segment;
  std::optional<svg::RasterImage> image_attachment;
  std::optional<std::string> svg_segment;
  std::string template_id;

  bool operator==(const PromptPayload&) const = default;
};

PromptPayload render_prompt(const PromptTemplate& tmpl, const ModalityInput& input);

/// Swaps the one-word suffix for the variant's suffix; every other byte is
/// kept. The base must be a one_word template ending in "in one word:".
PromptTemplate make_length_variant(const PromptTemplate& base, LengthVariant variant);

}  // namespace meol::embed

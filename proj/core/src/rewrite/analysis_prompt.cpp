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

#include "meol/rewrite/analysis_prompt.hpp"

#include "meol/error.hpp"

namespace meol::rewrite {

namespace {

constexpr std::string_view kInstruction =
    "You are given an SVG document and the image it renders to.\n"
    "1. List the salient objects visible in the image.\n"
    "2. Match each object to the SVG element that draws it. Refer to the element by its existing id, "
    "or by its element path: child indices separated by \"/\", counted from 0 below the root <svg> element "
    "(for example \"0/2/1\").\n"
    "3. Propose simplifications using only these actions: \"flatten\" (remove a group wrapper that has no "
    "attributes), \"remove_empty\" (delete an empty or unreferenced element), \"drop_identity_transform\" "
    "(delete a transform that has no effect), \"merge_transform\" (move the transform of a group with one "
    "child onto that child).\n"
    "4. Reply with one JSON object and nothing else, in exactly this form:\n"
    "{\"objects\":[{\"selector\":\"<id or path>\",\"new_id\":\"<descriptive name>\"}],"
    "\"simplify\":[{\"action\":\"<action>\",\"selector\":\"<id or path>\"}]}\n"
    "Choose each new_id to name what the object depicts, such as \"bird\" or \"left_wing\". "
    "Do not change colors, shapes or positions.";

}  // namespace

std::string_view analysis_instruction() { return kInstruction; }

std::size_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

embed::PromptPayload build_analysis_prompt(const svg::SvgDocument& doc, const svg::RasterImage& render,
                                           std::size_t token_budget) {
  std::string code = svg::serialize_svg(doc);
  std::size_t tokens = estimate_tokens(code);
  if (tokens > token_budget)
    throw SvgTooLong("SVG of " + std::to_string(code.size()) + " characters (~" + std::to_string(tokens) +
                     " tokens) exceeds the budget of " + std::to_string(token_budget) + " tokens");
  embed::PromptPayload p;
  p.text_segment = std::string(kInstruction) + "\n\n" + code;
  p.image_attachment = render;
  p.svg_segment = std::move(code);
  p.template_id = std::string(kAnalysisTemplateId);
  return p;
}

}  // namespace meol::rewrite

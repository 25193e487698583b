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
#include <string_view>

#include "meol/embed/prompt.hpp"
#include "meol/svg/document.hpp"
#include "meol/svg/raster.hpp"

namespace meol::rewrite {

inline constexpr std::size_t kDefaultTokenBudget = 32768;
inline constexpr std::string_view kAnalysisTemplateId = "svg_analysis";

/// Fixed instruction asking a model for a relabel/simplify plan in JSON.
std::string_view analysis_instruction();

/// Rough token count used for budget checks: ceil(bytes / 4).
std::size_t estimate_tokens(std::string_view text);

/// Instruction, then a blank line, then the canonical SVG. The render is
/// attached as the image. Throws SvgTooLong if the SVG alone exceeds
/// `token_budget`.
embed::PromptPayload build_analysis_prompt(const svg::SvgDocument& doc, const svg::RasterImage& render,
                                           std::size_t token_budget = kDefaultTokenBudget);

}  // namespace meol::rewrite

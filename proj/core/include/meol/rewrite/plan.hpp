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

#include <string>
#include <string_view>
#include <vector>

#include "meol/svg/document.hpp"
#include "meol/svg/simplify.hpp"

namespace meol::rewrite {

struct ObjectLabel {
  std::string selector;
  svg::NodePath path;  // resolved against the planned document
  std::string new_id;  // sanitized

  bool operator==(const ObjectLabel&) const = default;
};

struct SimplifyStep {
  svg::SimplifyAction action;
  std::string selector;
  svg::NodePath path;

  bool operator==(const SimplifyStep&) const = default;
};

/// Free-form attribute edit ({"action": "set_attribute", "name", "value"} in
/// the simplify list). Not render-neutral by construction; only the visual
/// check decides whether it survives.
struct AttributeEdit {
  std::string selector;
  svg::NodePath path;
  std::string name;
  std::string value;

  bool operator==(const AttributeEdit&) const = default;
};

struct RewritePlan {
  std::vector<ObjectLabel> object_labels;
  std::vector<SimplifyStep> simplify_actions;
  std::vector<AttributeEdit> attribute_edits;
  std::string model_raw;

  bool empty() const { return object_labels.empty() && simplify_actions.empty() && attribute_edits.empty(); }
};

/// Lowercases, maps spaces to '_', drops characters outside XML names and
/// prefixes '_' when the result would start with a digit, '-' or '.'.
/// Throws PlanParseError when nothing usable remains.
std::string sanitize_id(std::string_view raw);

/// Parses a model reply (the JSON object may be wrapped in a code fence or
/// prose) and checks it against `doc`.
RewritePlan parse_rewrite_plan(std::string_view response, const svg::SvgDocument& doc);

/// Applies labels, then simplify steps deepest-and-last first. Reference
/// attributes follow renamed ids. The input is not modified.
svg::SvgDocument apply_rewrite_plan(const svg::SvgDocument& doc, const RewritePlan& plan);

}  // namespace meol::rewrite

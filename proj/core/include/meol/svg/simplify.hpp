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
#include <string_view>

#include "meol/svg/document.hpp"

namespace meol::svg {

enum class SimplifyAction {
  Flatten,                // T1: splice a group's children into its parent
  RemoveEmpty,            // T2: delete an empty or unreferenced node
  DropIdentityTransform,  // T3: delete a transform attribute
  MergeTransform,         // T4: push a single-child group's transform into the child
};

std::string_view action_name(SimplifyAction action);
/// Accepts "flatten", "remove_empty", "drop_identity_transform",
/// "merge_transform" and the short forms "T1".."T4".
std::optional<SimplifyAction> parse_action(std::string_view text);

/// Executes one action on the node at `path` exactly as named, without
/// checking that the result renders the same. Returns false if the node
/// does not exist or the action does not apply to it.
bool apply_action(ElementNode& root, const NodePath& path, SimplifyAction action);

/// Whether the transform attribute value parses to the identity matrix.
bool is_identity_transform(std::string_view value);

/// Applies the render-neutral rules to a fixpoint; no render check.
SvgDocument simplify_structure(const SvgDocument& doc);

/// simplify_structure followed by a strict render comparison; returns the
/// input unchanged if the result drifts past kVisualTolerance.
SvgDocument simplify(const SvgDocument& doc);

}  // namespace meol::svg

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

#include "meol/svg/simplify.hpp"

#include <set>
#include <string>

#include "geometry.hpp"
#include "meol/svg/ids.hpp"
#include "meol/svg/raster.hpp"
#include "style.hpp"

namespace meol::svg {

namespace {

bool has_referenced_id(const ElementNode& n, const std::set<std::string>& refs) {
  if (const auto* id = n.attr("id"); id && refs.count(*id)) return true;
  for (const auto& c : n.children)
    if (has_referenced_id(c, refs)) return true;
  return false;
}

bool drop_identity_transforms(ElementNode& n) {
  bool changed = false;
  if (const auto* t = n.attr("transform"); t && is_identity_transform(*t)) {
    n.remove_attr("transform");
    changed = true;
  }
  for (auto& c : n.children) changed |= drop_identity_transforms(c);
  return changed;
}

bool merge_transforms(ElementNode& n) {
  bool changed = false;
  for (auto& c : n.children) changed |= merge_transforms(c);
  if (n.local_name() == "g" && n.children.size() == 1 && n.has_attr("transform") &&
      !n.children[0].has_attr("transform") && n.children[0].tag.find(':') == std::string::npos) {
    n.children[0].set_attr("transform", *n.attr("transform"));
    n.remove_attr("transform");
    changed = true;
  }
  return changed;
}

bool remove_dead(ElementNode& n, const std::set<std::string>& refs) {
  bool changed = false;
  bool is_defs = n.local_name() == "defs";
  for (std::size_t i = 0; i < n.children.size();) {
    ElementNode& c = n.children[i];
    std::string_view name = c.local_name();
    bool dead = false;
    if ((name == "g" || name == "defs") && c.children.empty() && !has_referenced_id(c, refs)) {
      dead = true;
    } else if (is_defs && name != "style" && name != "script" && !has_referenced_id(c, refs)) {
      dead = true;
    }
    if (dead) {
      n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
      continue;
    }
    changed |= remove_dead(c, refs);
    ++i;
  }
  return changed;
}

bool flatten_bare_groups(ElementNode& n) {
  bool changed = false;
  for (std::size_t i = 0; i < n.children.size();) {
    ElementNode& c = n.children[i];
    if (c.local_name() == "g" && c.attributes.empty() && c.text.empty()) {
      std::vector<ElementNode> kids = std::move(c.children);
      auto at = n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(i));
      n.children.insert(at, std::make_move_iterator(kids.begin()), std::make_move_iterator(kids.end()));
      changed = true;
      continue;  // revisit the spliced children at the same index
    }
    changed |= flatten_bare_groups(c);
    ++i;
  }
  return changed;
}

}  // namespace

std::string_view action_name(SimplifyAction action) {
  switch (action) {
    case SimplifyAction::Flatten: return "flatten";
    case SimplifyAction::RemoveEmpty: return "remove_empty";
    case SimplifyAction::DropIdentityTransform: return "drop_identity_transform";
    case SimplifyAction::MergeTransform: return "merge_transform";
  }
  return "";
}

std::optional<SimplifyAction> parse_action(std::string_view text) {
  if (text == "flatten" || text == "T1") return SimplifyAction::Flatten;
  if (text == "remove_empty" || text == "T2") return SimplifyAction::RemoveEmpty;
  if (text == "drop_identity_transform" || text == "T3") return SimplifyAction::DropIdentityTransform;
  if (text == "merge_transform" || text == "T4") return SimplifyAction::MergeTransform;
  return std::nullopt;
}

bool is_identity_transform(std::string_view value) {
  auto m = detail::parse_transform(value);
  return m && m->is_identity();
}

bool apply_action(ElementNode& root, const NodePath& path, SimplifyAction action) {
  if (path.empty()) {
    if (action != SimplifyAction::DropIdentityTransform) return false;
    return root.remove_attr("transform");
  }
  ElementNode* parent = &root;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] >= parent->children.size()) return false;
    parent = &parent->children[path[i]];
  }
  std::size_t idx = path.back();
  if (idx >= parent->children.size()) return false;
  ElementNode& node = parent->children[idx];
  auto at = parent->children.begin() + static_cast<std::ptrdiff_t>(idx);
  switch (action) {
    case SimplifyAction::Flatten: {
      if (node.local_name() != "g") return false;
      std::vector<ElementNode> kids = std::move(node.children);
      at = parent->children.erase(at);
      parent->children.insert(at, std::make_move_iterator(kids.begin()), std::make_move_iterator(kids.end()));
      return true;
    }
    case SimplifyAction::RemoveEmpty:
      if (!node.children.empty()) return false;
      parent->children.erase(at);
      return true;
    case SimplifyAction::DropIdentityTransform:
      return node.remove_attr("transform");
    case SimplifyAction::MergeTransform: {
      if (node.local_name() != "g" || node.children.size() != 1 || !node.has_attr("transform")) return false;
      std::string outer(detail::trim(*node.attr("transform")));
      ElementNode& child = node.children[0];
      if (const auto* inner = child.attr("transform")) outer += " " + std::string(detail::trim(*inner));
      child.set_attr("transform", outer);
      node.remove_attr("transform");
      return true;
    }
  }
  return false;
}

SvgDocument simplify_structure(const SvgDocument& doc) {
  ElementNode root = doc.root();
  for (bool changed = true; changed;) {
    changed = false;
    changed |= drop_identity_transforms(root);
    changed |= merge_transforms(root);
    changed |= remove_dead(root, referenced_ids(root));
    changed |= flatten_bare_groups(root);
  }
  return SvgDocument(std::move(root), doc.source_text());
}

SvgDocument simplify(const SvgDocument& doc) {
  SvgDocument result = simplify_structure(doc);
  if (result == doc) return doc;
  auto before = rasterize(doc);
  auto after = rasterize(result);
  if (visual_distance(before, after) > kVisualTolerance) return doc;
  return result;
}

}  // namespace meol::svg

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

#include "meol/svg/document.hpp"

#include <charconv>
#include <map>

#include "meol/error.hpp"

namespace meol::svg {

std::string path_to_string(const NodePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(path[i]);
  }
  return out;
}

std::optional<NodePath> path_from_string(std::string_view s) {
  if (s.empty()) return std::nullopt;
  NodePath path;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t slash = s.find('/', pos);
    if (slash == std::string_view::npos) slash = s.size();
    auto part = s.substr(pos, slash - pos);
    if (part.empty()) return std::nullopt;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) return std::nullopt;
    path.push_back(value);
    pos = slash + 1;
  }
  return path;
}

const std::string* ElementNode::attr(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a.value;
  return nullptr;
}

void ElementNode::set_attr(std::string_view name, std::string value) {
  for (auto& a : attributes) {
    if (a.name == name) {
      a.value = std::move(value);
      return;
    }
  }
  attributes.push_back({std::string(name), std::move(value)});
}

bool ElementNode::remove_attr(std::string_view name) {
  for (auto it = attributes.begin(); it != attributes.end(); ++it) {
    if (it->name == name) {
      attributes.erase(it);
      return true;
    }
  }
  return false;
}

std::string_view ElementNode::local_name() const {
  std::string_view t = tag;
  auto colon = t.find(':');
  return colon == std::string_view::npos ? t : t.substr(colon + 1);
}

SvgDocument::SvgDocument(ElementNode root, std::string source_text)
    : root_(std::move(root)), source_text_(std::move(source_text)) {}

std::size_t SvgDocument::element_count() const { return count_elements(root_); }

const ElementNode* SvgDocument::find(const NodePath& path) const {
  const ElementNode* node = &root_;
  for (auto idx : path) {
    if (idx >= node->children.size()) return nullptr;
    node = &node->children[idx];
  }
  return node;
}

ElementNode* SvgDocument::find(const NodePath& path) {
  ElementNode* node = &root_;
  for (auto idx : path) {
    if (idx >= node->children.size()) return nullptr;
    node = &node->children[idx];
  }
  return node;
}

std::optional<NodePath> SvgDocument::find_id(std::string_view id) const {
  std::optional<NodePath> found;
  walk(root_, [&](const ElementNode& n, const NodePath& p) {
    if (found) return;
    if (const auto* v = n.attr("id"); v && *v == id) found = p;
  });
  return found;
}

namespace {

void walk_impl(const ElementNode& node, NodePath& path,
               const std::function<void(const ElementNode&, const NodePath&)>& fn) {
  fn(node, path);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    walk_impl(node.children[i], path, fn);
    path.pop_back();
  }
}

}  // namespace

void walk(const ElementNode& root,
          const std::function<void(const ElementNode&, const NodePath&)>& fn) {
  NodePath path;
  walk_impl(root, path, fn);
}

std::size_t count_elements(const ElementNode& node) {
  std::size_t n = 1;
  for (const auto& c : node.children) n += count_elements(c);
  return n;
}

void check_unique_ids(const ElementNode& root) {
  std::map<std::string, NodePath, std::less<>> seen;
  walk(root, [&](const ElementNode& n, const NodePath& p) {
    const auto* id = n.attr("id");
    if (!id) return;
    auto [it, inserted] = seen.emplace(*id, p);
    if (!inserted) {
      throw DuplicateId("id \"" + *id + "\" used at [" + path_to_string(it->second) +
                        "] and [" + path_to_string(p) + "]");
    }
  });
}

}  // namespace meol::svg

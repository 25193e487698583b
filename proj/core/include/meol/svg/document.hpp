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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meol::svg {

/// Child indices from the root, e.g. {0, 2, 1}. The root itself is {}.
using NodePath = std::vector<std::size_t>;

std::string path_to_string(const NodePath& path);            // "0/2/1"
std::optional<NodePath> path_from_string(std::string_view s);  // nullopt if not a path

struct Attribute {
  std::string name;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

/// One XML element. Attributes keep source order. Character data of the
/// element (relevant for <text>, <style>, <title>) is kept in `text`;
/// whitespace-only runs between elements are dropped by the parser.
class ElementNode {
 public:
  ElementNode() = default;
  explicit ElementNode(std::string tag_name) : tag(std::move(tag_name)) {}

  std::string tag;
  std::vector<Attribute> attributes;
  std::vector<ElementNode> children;
  std::string text;

  const std::string* attr(std::string_view name) const;
  bool has_attr(std::string_view name) const { return attr(name) != nullptr; }
  /// Replaces the value in place if present, otherwise appends.
  void set_attr(std::string_view name, std::string value);
  bool remove_attr(std::string_view name);

  /// Local name without namespace prefix ("svg:rect" -> "rect").
  std::string_view local_name() const;

  bool operator==(const ElementNode&) const = default;
};

/// A parsed SVG file. Structural equality compares the element tree only.
class SvgDocument {
 public:
  SvgDocument() = default;
  SvgDocument(ElementNode root, std::string source_text);

  const ElementNode& root() const { return root_; }
  ElementNode& mutable_root() { return root_; }
  const std::string& source_text() const { return source_text_; }

  std::size_t element_count() const;

  const ElementNode* find(const NodePath& path) const;
  ElementNode* find(const NodePath& path);
  /// Path of the element carrying `id`, if any.
  std::optional<NodePath> find_id(std::string_view id) const;

  bool operator==(const SvgDocument& other) const { return root_ == other.root_; }

 private:
  ElementNode root_;
  std::string source_text_;
};

/// Pre-order traversal; `fn(node, path)`.
void walk(const ElementNode& root,
          const std::function<void(const ElementNode&, const NodePath&)>& fn);

std::size_t count_elements(const ElementNode& node);

/// Throws DuplicateId naming both paths if two elements share an id.
void check_unique_ids(const ElementNode& root);

/// Parses UTF-8 SVG text. Errors: MalformedXml (with line:column), NotAnSvg,
/// DuplicateId.
SvgDocument parse_svg(std::string_view text);

/// Canonical form: no XML declaration, no inter-element whitespace,
/// self-closing childless elements, attributes in stored order.
std::string serialize_svg(const SvgDocument& doc);
std::string serialize_element(const ElementNode& node);

}  // namespace meol::svg

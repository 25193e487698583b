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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "meol/svg/document.hpp"

namespace meol::svg {

struct IdEntry {
  NodePath path;
  std::string id;

  bool operator==(const IdEntry&) const = default;
};

struct IdReport {
  std::vector<IdEntry> descriptive;
  std::vector<IdEntry> non_descriptive;
  std::vector<NodePath> missing;  // group/shape nodes with no id
};

/// Generic editor-style ids such as "Layer_1", "path123", "g7" or "_12".
bool is_non_descriptive_id(std::string_view id);

/// Whether inventory_ids tracks elements with this local name.
bool is_inventoried_tag(std::string_view local_name);

IdReport inventory_ids(const SvgDocument& doc);

/// Ids named by url(#...) values, href/xlink:href fragments, or style sheet text.
std::set<std::string> referenced_ids(const ElementNode& root);

/// Points every url(#from) and href="#from" reference at `to`.
void rename_id_references(ElementNode& root, std::string_view from, std::string_view to);
/// Same for several renames at once; each reference is rewritten at most once.
void rename_id_references(ElementNode& root, const std::map<std::string, std::string>& renames);

}  // namespace meol::svg

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

#include "meol/svg/ids.hpp"

#include <algorithm>
#include <regex>

namespace meol::svg {

namespace {

const std::regex& generic_id_pattern() {
  static const std::regex re("^(layer|path|group|g|svg|rect|circle|shape|vector|xmlid)[-_]?[0-9]*$",
                             std::regex::icase | std::regex::ECMAScript);
  return re;
}

bool is_href(std::string_view name) { return name == "href" || name == "xlink:href"; }

void collect_url_refs(std::string_view text, std::set<std::string>& out) {
  std::size_t pos = 0;
  while ((pos = text.find("url(", pos)) != std::string_view::npos) {
    pos += 4;
    std::size_t i = pos;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\'' || text[i] == '"')) ++i;
    if (i >= text.size() || text[i] != '#') continue;
    ++i;
    std::size_t end = i;
    while (end < text.size() && text[end] != ')' && text[end] != '\'' && text[end] != '"' && text[end] != ' ') ++end;
    if (end > i) out.emplace(text.substr(i, end - i));
    pos = end;
  }
}

std::string replace_url_refs(std::string_view text, const std::map<std::string, std::string>& renames) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    std::size_t hit = text.find("url(", pos);
    if (hit == std::string_view::npos) break;
    std::size_t i = hit + 4;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\'' || text[i] == '"')) ++i;
    if (i < text.size() && text[i] == '#') {
      std::size_t start = i + 1;
      std::size_t end = start;
      while (end < text.size() && text[end] != ')' && text[end] != '\'' && text[end] != '"' && text[end] != ' ') ++end;
      auto hit_it = renames.find(std::string(text.substr(start, end - start)));
      if (hit_it != renames.end()) {
        out.append(text.substr(pos, start - pos));
        out.append(hit_it->second);
        pos = end;
        continue;
      }
    }
    out.append(text.substr(pos, i - pos));
    pos = i;
  }
  out.append(text.substr(pos));
  return out;
}

void rename_in(ElementNode& node, const std::map<std::string, std::string>& renames) {
  for (auto& a : node.attributes) {
    if (is_href(a.name)) {
      if (a.value.size() > 1 && a.value[0] == '#') {
        auto it = renames.find(a.value.substr(1));
        if (it != renames.end()) a.value = "#" + it->second;
      }
    } else if (a.value.find("url(") != std::string::npos) {
      a.value = replace_url_refs(a.value, renames);
    }
  }
  if (!node.text.empty() && node.text.find("url(") != std::string::npos)
    node.text = replace_url_refs(node.text, renames);
  for (auto& c : node.children) rename_in(c, renames);
}

}  // namespace

bool is_non_descriptive_id(std::string_view id) {
  if (!id.empty() && std::all_of(id.begin(), id.end(), [](char c) { return (c >= '0' && c <= '9') || c == '_'; }))
    return true;
  return std::regex_match(id.begin(), id.end(), generic_id_pattern());
}

bool is_inventoried_tag(std::string_view name) {
  static constexpr std::string_view kTags[] = {"g",       "path",     "circle", "rect", "ellipse",
                                               "polygon", "polyline", "line",   "text"};
  return std::find(std::begin(kTags), std::end(kTags), name) != std::end(kTags);
}

IdReport inventory_ids(const SvgDocument& doc) {
  IdReport report;
  walk(doc.root(), [&](const ElementNode& n, const NodePath& path) {
    if (path.empty() || !is_inventoried_tag(n.local_name())) return;
    const std::string* id = n.attr("id");
    if (!id || id->empty()) {
      report.missing.push_back(path);
    } else if (is_non_descriptive_id(*id)) {
      report.non_descriptive.push_back({path, *id});
    } else {
      report.descriptive.push_back({path, *id});
    }
  });
  return report;
}

std::set<std::string> referenced_ids(const ElementNode& root) {
  std::set<std::string> out;
  walk(root, [&](const ElementNode& n, const NodePath&) {
    for (const auto& a : n.attributes) {
      if (is_href(a.name)) {
        if (a.value.size() > 1 && a.value[0] == '#') out.insert(a.value.substr(1));
      } else {
        collect_url_refs(a.value, out);
      }
    }
    if (!n.text.empty()) collect_url_refs(n.text, out);
  });
  return out;
}

void rename_id_references(ElementNode& root, std::string_view from, std::string_view to) {
  rename_in(root, {{std::string(from), std::string(to)}});
}

void rename_id_references(ElementNode& root, const std::map<std::string, std::string>& renames) {
  if (!renames.empty()) rename_in(root, renames);
}

}  // namespace meol::svg

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

#include "meol/rewrite/plan.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>

#include "meol/error.hpp"
#include "meol/svg/ids.hpp"

namespace meol::rewrite {

using nlohmann::json;

namespace {

bool is_name_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

svg::NodePath resolve(const std::string& selector, const svg::SvgDocument& doc) {
  if (auto p = doc.find_id(selector)) return *p;
  if (auto p = svg::path_from_string(selector); p && doc.find(*p)) return *p;
  throw SelectorUnresolved(selector);
}

std::string extract_object(std::string_view response) {
  auto open = response.find('{');
  auto close = response.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw PlanParseError("reply contains no JSON object");
  return std::string(response.substr(open, close - open + 1));
}

const json& entries(const json& j, const char* key) {
  static const json empty = json::array();
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return empty;
  if (!it->is_array()) throw PlanParseError(std::string("\"") + key + "\" must be an array");
  return *it;
}

std::string string_member(const json& entry, const char* key, const char* where) {
  if (!entry.is_object()) throw PlanParseError(std::string(where) + " entries must be objects");
  auto it = entry.find(key);
  if (it == entry.end() || !it->is_string())
    throw PlanParseError(std::string(where) + " entry needs a string \"" + key + "\"");
  return it->get<std::string>();
}

void check_applicable(svg::SimplifyAction action, const svg::ElementNode& node, const std::string& selector,
                      bool is_root) {
  auto fail = [&](const char* why) {
    throw PlanParseError(std::string(svg::action_name(action)) + " on \"" + selector + "\": " + why);
  };
  switch (action) {
    case svg::SimplifyAction::Flatten:
      if (is_root || node.local_name() != "g") fail("target is not a group");
      break;
    case svg::SimplifyAction::RemoveEmpty:
      if (is_root) fail("cannot remove the root");
      if (!node.children.empty()) fail("target has children");
      break;
    case svg::SimplifyAction::DropIdentityTransform:
      if (!node.has_attr("transform")) fail("target has no transform");
      break;
    case svg::SimplifyAction::MergeTransform:
      if (is_root || node.local_name() != "g" || node.children.size() != 1 || !node.has_attr("transform"))
        fail("target is not a transformed group with one child");
      break;
  }
}

}  // namespace

std::string sanitize_id(std::string_view raw) {
  std::string out;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
    if (c == ' ') c = '_';
    if (is_name_char(c)) out.push_back(static_cast<char>(c));
  }
  if (out.empty()) throw PlanParseError("new_id \"" + std::string(raw) + "\" has no usable characters");
  char first = out.front();
  if ((first >= '0' && first <= '9') || first == '-' || first == '.') out.insert(out.begin(), '_');
  return out;
}

RewritePlan parse_rewrite_plan(std::string_view response, const svg::SvgDocument& doc) {
  RewritePlan plan;
  plan.model_raw = std::string(response);
  json j;
  try {
    j = json::parse(extract_object(response));
  } catch (const json::parse_error& e) {
    throw PlanParseError(std::string("reply is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw PlanParseError("reply is not a JSON object");
  if (!j.contains("objects") && !j.contains("simplify"))
    throw PlanParseError("reply has neither \"objects\" nor \"simplify\"");

  std::set<svg::NodePath> labelled;
  for (const auto& e : entries(j, "objects")) {
    ObjectLabel label;
    label.selector = string_member(e, "selector", "objects");
    std::string raw_id = string_member(e, "new_id", "objects");
    label.path = resolve(label.selector, doc);
    if (label.path.empty()) throw PlanParseError("cannot relabel the root element");
    if (!labelled.insert(label.path).second)
      throw PlanParseError("selector \"" + label.selector + "\" names an element already labelled in this plan");
    label.new_id = sanitize_id(raw_id);
    plan.object_labels.push_back(std::move(label));
  }

  // Ids given up by relabelled elements are free; every other id stays.
  std::set<std::string> kept;
  svg::walk(doc.root(), [&](const svg::ElementNode& n, const svg::NodePath& p) {
    if (const auto* id = n.attr("id"); id && !labelled.count(p)) kept.insert(*id);
  });
  std::set<std::string> used;
  for (auto& label : plan.object_labels) {
    if (kept.count(label.new_id))
      throw IdCollision("new_id \"" + label.new_id + "\" is already used by another element");
    std::string candidate = label.new_id;
    for (int n = 2; used.count(candidate) || kept.count(candidate); ++n) candidate = label.new_id + "_" + std::to_string(n);
    label.new_id = candidate;
    used.insert(candidate);
  }

  std::set<svg::NodePath> simplified;
  for (const auto& e : entries(j, "simplify")) {
    SimplifyStep step{};
    std::string action = string_member(e, "action", "simplify");
    if (action == "set_attribute") {
      AttributeEdit edit;
      edit.selector = string_member(e, "selector", "simplify");
      edit.name = string_member(e, "name", "set_attribute");
      edit.value = string_member(e, "value", "set_attribute");
      if (edit.name.empty() || edit.name == "id") throw PlanParseError("set_attribute cannot edit \"" + edit.name + "\"");
      edit.path = resolve(edit.selector, doc);
      plan.attribute_edits.push_back(std::move(edit));
      continue;
    }
    auto parsed = svg::parse_action(action);
    if (!parsed) throw PlanParseError("unknown simplify action \"" + action + "\"");
    step.action = *parsed;
    step.selector = string_member(e, "selector", "simplify");
    step.path = resolve(step.selector, doc);
    if (!simplified.insert(step.path).second)
      throw PlanParseError("selector \"" + step.selector + "\" appears in more than one simplify action");
    check_applicable(step.action, *doc.find(step.path), step.selector, step.path.empty());
    plan.simplify_actions.push_back(std::move(step));
  }
  return plan;
}

svg::SvgDocument apply_rewrite_plan(const svg::SvgDocument& doc, const RewritePlan& plan) {
  svg::SvgDocument out = doc;
  svg::ElementNode& root = out.mutable_root();
  std::map<std::string, std::string> renames;
  for (const auto& label : plan.object_labels) {
    svg::ElementNode* node = out.find(label.path);
    if (!node) continue;
    if (const auto* old = node->attr("id"); old && *old != label.new_id) renames[*old] = label.new_id;
    node->set_attr("id", label.new_id);
  }
  svg::rename_id_references(root, renames);
  for (const auto& edit : plan.attribute_edits)
    if (svg::ElementNode* node = out.find(edit.path)) node->set_attr(edit.name, edit.value);

  std::vector<SimplifyStep> steps = plan.simplify_actions;
  std::sort(steps.begin(), steps.end(), [](const SimplifyStep& a, const SimplifyStep& b) { return a.path > b.path; });
  for (const auto& step : steps) svg::apply_action(root, step.path, step.action);
  return out;
}

}  // namespace meol::rewrite

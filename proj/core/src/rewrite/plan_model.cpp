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

#include "meol/rewrite/plan_model.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

#include "meol/error.hpp"
#include "meol/svg/ids.hpp"
#include "meol/svg/simplify.hpp"

namespace meol::rewrite {

using nlohmann::json;

void ScriptedPlanModel::script(const svg::SvgDocument& doc, std::vector<Reply> replies) {
  std::lock_guard lock(mu_);
  scripts_[svg::serialize_svg(doc)] = Script{std::move(replies), 0};
}

void ScriptedPlanModel::script_svg_text(const std::string& svg_text, std::vector<Reply> replies) {
  script(svg::parse_svg(svg_text), std::move(replies));
}

std::shared_ptr<ScriptedPlanModel> ScriptedPlanModel::from_jsonl(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw FileUnreadable("cannot read plan script " + path.string());
  auto model = std::make_shared<ScriptedPlanModel>();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto where = path.string() + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("svg") || !j["svg"].is_string())
      throw ConfigError(where + ": expected an object with a string \"svg\"");
    std::vector<Reply> replies;
    auto reply_of = [&](const json& v) -> Reply {
      if (v.is_null()) return std::nullopt;
      if (!v.is_string()) throw ConfigError(where + ": replies must be strings or null");
      return v.get<std::string>();
    };
    if (j.contains("responses")) {
      if (!j["responses"].is_array()) throw ConfigError(where + ": \"responses\" must be an array");
      for (const auto& v : j["responses"]) replies.push_back(reply_of(v));
    } else if (j.contains("response")) {
      replies.push_back(reply_of(j["response"]));
    } else {
      throw ConfigError(where + ": needs \"response\" or \"responses\"");
    }
    model->script_svg_text(j["svg"].get<std::string>(), std::move(replies));
  }
  return model;
}

std::string ScriptedPlanModel::complete(const embed::PromptPayload& prompt) {
  std::lock_guard lock(mu_);
  ++calls_;
  Reply reply;
  auto it = prompt.svg_segment ? scripts_.find(*prompt.svg_segment) : scripts_.end();
  if (it != scripts_.end() && !it->second.replies.empty()) {
    Script& s = it->second;
    reply = s.replies[std::min(s.next, s.replies.size() - 1)];
    ++s.next;
  } else if (has_default_) {
    reply = default_;
  } else {
    throw BackendUnavailable("no scripted reply for this document");
  }
  if (!reply) throw BackendUnavailable("scripted backend failure");
  return *reply;
}

std::size_t ScriptedPlanModel::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

namespace {

std::string paint_word(const svg::ElementNode& n) {
  const std::string* fill = n.attr("fill");
  if (!fill) fill = n.attr("stroke");
  if (!fill || fill->empty()) return "plain";
  bool alpha = std::all_of(fill->begin(), fill->end(), [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); });
  if (!alpha) return "colored";
  std::string w = *fill;
  for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (w == "none") return "outlined";
  return w;
}

std::string kind_word(std::string_view tag) {
  if (tag == "g") return "cluster";
  if (tag == "path") return "outline";
  if (tag == "rect") return "box";
  if (tag == "polygon") return "polygon_shape";
  if (tag == "polyline") return "polyline_stroke";
  return std::string(tag);
}

}  // namespace

std::string HeuristicPlanModel::complete(const embed::PromptPayload& prompt) {
  if (!prompt.svg_segment) throw BackendRejected("analysis prompt carries no SVG");
  svg::SvgDocument doc = svg::parse_svg(*prompt.svg_segment);
  auto refs = svg::referenced_ids(doc.root());

  json simplify = json::array();
  std::set<svg::NodePath> removed;
  svg::walk(doc.root(), [&](const svg::ElementNode& n, const svg::NodePath& p) {
    if (p.empty() || n.local_name() != "g") return;
    std::string sel = svg::path_to_string(p);
    if (n.attributes.empty() && !n.children.empty()) {
      simplify.push_back({{"action", "flatten"}, {"selector", sel}});
      removed.insert(p);
    } else if (n.children.empty() && !(n.attr("id") && refs.count(*n.attr("id")))) {
      simplify.push_back({{"action", "remove_empty"}, {"selector", sel}});
      removed.insert(p);
    } else if (const auto* t = n.attr("transform"); t && svg::is_identity_transform(*t)) {
      simplify.push_back({{"action", "drop_identity_transform"}, {"selector", sel}});
    }
  });

  std::set<std::string> taken;
  svg::walk(doc.root(), [&](const svg::ElementNode& n, const svg::NodePath&) {
    if (const auto* id = n.attr("id")) taken.insert(*id);
  });
  json objects = json::array();
  svg::walk(doc.root(), [&](const svg::ElementNode& n, const svg::NodePath& p) {
    if (p.empty() || removed.count(p) || !svg::is_inventoried_tag(n.local_name())) return;
    const std::string* id = n.attr("id");
    if (id && !id->empty() && !svg::is_non_descriptive_id(*id)) return;
    std::string base = paint_word(n) + "_" + kind_word(n.local_name());
    std::string candidate = base;
    for (int k = 2; taken.count(candidate); ++k) candidate = base + "_" + std::to_string(k);
    taken.insert(candidate);
    objects.push_back({{"selector", svg::path_to_string(p)}, {"new_id", candidate}});
  });
  json plan = {{"objects", objects}, {"simplify", simplify}};
  return plan.dump();
}

}  // namespace meol::rewrite

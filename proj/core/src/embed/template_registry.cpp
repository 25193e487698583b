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

#include "meol/embed/template_registry.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "meol/error.hpp"

namespace meol::embed {

namespace {

constexpr std::string_view kKnowledgeClause = "means, considering what is commonly known about it,";

std::string lead_in(Modality m) {
  switch (m) {
    case Modality::Text: return "This text: \"{X}\"";
    case Modality::Image: return "This image: {X}";
    case Modality::Svg: return "This SVG: \"{X}\"";
    case Modality::ImageSvg: return "This image and SVG: {X}";
  }
  return {};
}

std::string_view meol_instruction(Modality m) {
  switch (m) {
    case Modality::Text: return kTextInstruction;
    case Modality::Image: return kImageInstruction;
    case Modality::Svg: return kSvgInstruction;
    case Modality::ImageSvg: return kImageSvgInstruction;
  }
  return {};
}

std::string eol_lead_in(Modality m) {
  if (m == Modality::Text) return "This sentence: {X}";
  return lead_in(m);
}

}  // namespace

std::string TemplateRegistry::id_for(Family family, Modality modality, LengthVariant variant) {
  std::string id = std::string(family_name(family)) + "_" + std::string(modality_name(modality));
  if (variant != LengthVariant::OneWord) id += "@" + std::string(variant_name(variant));
  return id;
}

TemplateRegistry TemplateRegistry::builtin() {
  TemplateRegistry r;
  for (Modality m : {Modality::Text, Modality::Image, Modality::Svg, Modality::ImageSvg}) {
    r.add({id_for(Family::Meol, m), Family::Meol, m, lead_in(m) + " {instruction} in one word:",
           std::string(meol_instruction(m)), LengthVariant::OneWord});
    r.add({id_for(Family::PromptEol, m), Family::PromptEol, m, eol_lead_in(m) + " {instruction} [MASK]", "means",
           LengthVariant::OneWord});
    r.add({id_for(Family::KeEol, m), Family::KeEol, m, eol_lead_in(m) + " {instruction} [MASK]",
           std::string(kKnowledgeClause), LengthVariant::OneWord});
  }
  return r;
}

TemplateRegistry TemplateRegistry::from_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw FileUnreadable("cannot read template file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  TemplateRegistry r = builtin();
  r.merge_json(ss.str());
  return r;
}

void TemplateRegistry::merge_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw TemplateError(std::string("template file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw TemplateError("template file must hold a JSON object keyed by template id");
  for (const auto& [id, entry] : j.items()) {
    if (!entry.is_object()) throw TemplateError("template \"" + id + "\" must be an object");
    if (id.find('@') != std::string::npos) throw TemplateError("template id \"" + id + "\" may not contain '@'");
    PromptTemplate t;
    if (auto it = templates_.find(id); it != templates_.end()) t = it->second;
    t.template_id = id;
    auto str = [&](const char* key) -> std::optional<std::string> {
      auto it = entry.find(key);
      if (it == entry.end()) return std::nullopt;
      if (!it->is_string()) throw TemplateError("template \"" + id + "\": \"" + key + "\" must be a string");
      return it->get<std::string>();
    };
    if (auto v = str("family")) {
      auto f = parse_family(*v);
      if (!f) throw TemplateError("template \"" + id + "\": unknown family \"" + *v + "\"");
      t.family = *f;
    }
    if (auto v = str("modality")) {
      auto m = parse_modality(*v);
      if (!m) throw TemplateError("template \"" + id + "\": unknown modality \"" + *v + "\"");
      t.modality = *m;
    }
    if (auto v = str("length_variant")) {
      auto lv = parse_variant(*v);
      if (!lv) throw TemplateError("template \"" + id + "\": unknown length_variant \"" + *v + "\"");
      t.length_variant = *lv;
    }
    if (auto v = str("skeleton")) t.skeleton = *v;
    if (auto v = str("instruction")) t.instruction = *v;
    add(std::move(t));
  }
}

void TemplateRegistry::add(PromptTemplate t) {
  t.validate();
  std::string id = t.template_id;
  templates_[id] = std::move(t);
}

bool TemplateRegistry::contains(const std::string& template_id) const {
  try {
    get(template_id);
    return true;
  } catch (const TemplateError&) {
    return false;
  }
}

PromptTemplate TemplateRegistry::get(const std::string& template_id) const {
  auto at = template_id.find('@');
  std::string base = template_id.substr(0, at);
  auto it = templates_.find(base);
  if (it == templates_.end()) throw TemplateError("unknown template \"" + template_id + "\"");
  if (at == std::string::npos) return it->second;
  auto variant = parse_variant(std::string_view(template_id).substr(at + 1));
  if (!variant) throw TemplateError("unknown length variant in \"" + template_id + "\"");
  return make_length_variant(it->second, *variant);
}

std::vector<std::string> TemplateRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, t] : templates_) out.push_back(id);
  return out;
}

}  // namespace meol::embed

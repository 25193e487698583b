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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "meol/embed/prompt.hpp"

namespace meol::embed {

inline constexpr std::string_view kTextInstruction = "expresses the following meaning and visual attributes";
inline constexpr std::string_view kImageInstruction = "shows the following visual content";
inline constexpr std::string_view kSvgInstruction = "vector graphic code renders and represents";
inline constexpr std::string_view kImageSvgInstruction = "image and its vector code together represent";

/// Templates by id. Ids of the form "<base>@<variant>" resolve to the
/// length variant of <base> without being stored.
class TemplateRegistry {
 public:
  /// mEOL for all four modalities plus PromptEOL and KEEOL baselines.
  static TemplateRegistry builtin();

  /// Builtin templates overlaid with entries from a JSON object of the
  /// form {"<template_id>": {"family", "modality", "skeleton",
  /// "instruction", "length_variant"}}. Missing fields inherit from the
  /// builtin entry of the same id, if any.
  static TemplateRegistry from_file(const std::filesystem::path& path);
  void merge_json(std::string_view json_text);

  void add(PromptTemplate t);
  PromptTemplate get(const std::string& template_id) const;
  bool contains(const std::string& template_id) const;
  std::vector<std::string> ids() const;

  /// Canonical id for a family/modality/variant, e.g. "meol_svg@two_words".
  static std::string id_for(Family family, Modality modality, LengthVariant variant = LengthVariant::OneWord);

 private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace meol::embed

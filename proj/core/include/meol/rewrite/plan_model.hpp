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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "meol/embed/prompt.hpp"
#include "meol/svg/document.hpp"

namespace meol::rewrite {

/// A model that answers the analysis prompt with plan text.
/// Implementations must tolerate concurrent calls.
class PlanModel {
 public:
  virtual ~PlanModel() = default;
  virtual std::string complete(const embed::PromptPayload& prompt) = 0;
  virtual std::string model_id() const = 0;
};

/// Canned replies keyed by the canonical serialization of the prompted SVG.
/// Successive calls for one key walk through its replies, repeating the
/// last. A std::nullopt reply simulates an unreachable backend.
class ScriptedPlanModel : public PlanModel {
 public:
  using Reply = std::optional<std::string>;

  void script(const svg::SvgDocument& doc, std::vector<Reply> replies);
  void script_svg_text(const std::string& svg_text, std::vector<Reply> replies);
  /// Reply for unscripted documents; without one they raise BackendUnavailable.
  void set_default(Reply reply) { default_ = std::move(reply); has_default_ = true; }

  /// JSON lines of {"svg": "...", "response": "..."} or
  /// {"svg": "...", "responses": ["...", null]}.
  static std::shared_ptr<ScriptedPlanModel> from_jsonl(const std::filesystem::path& path);

  std::string complete(const embed::PromptPayload& prompt) override;
  std::string model_id() const override { return "scripted"; }
  std::size_t calls() const;

 private:
  struct Script {
    std::vector<Reply> replies;
    std::size_t next = 0;
  };
  mutable std::mutex mu_;
  std::map<std::string, Script> scripts_;
  Reply default_;
  bool has_default_ = false;
  std::size_t calls_ = 0;
};

/// Rule-based stand-in that needs no model: labels every group or shape
/// whose id is missing or generic as "<paint>_<kind>", flattens bare
/// groups, drops identity transforms and removes empty groups.
class HeuristicPlanModel : public PlanModel {
 public:
  std::string complete(const embed::PromptPayload& prompt) override;
  std::string model_id() const override { return "heuristic"; }
};

}  // namespace meol::rewrite

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
#include <fstream>
#include <mutex>
#include <optional>
#include <string>

#include "meol/rewrite/analysis_prompt.hpp"
#include "meol/rewrite/plan.hpp"
#include "meol/rewrite/plan_model.hpp"
#include "meol/svg/document.hpp"

namespace meol::rewrite {

struct RewriteOptions {
  std::size_t token_budget = kDefaultTokenBudget;
  /// Extra attempts after the first failure, each with the same prompt.
  int retries = 1;
  /// Run the render-neutral simplifier over the applied plan.
  bool auto_simplify = true;
  int raster_size = svg::kDefaultRasterSize;
};

enum class RewriteStatus { Rewritten, FallbackOriginal };

std::string_view status_name(RewriteStatus s);  // "rewritten" / "fallback_original"

struct RewriteOutcome {
  RewriteStatus status = RewriteStatus::FallbackOriginal;
  svg::SvgDocument document;
  /// Bytes to write out: the canonical rewrite, or the untouched input text
  /// on fallback.
  std::string svg_text;
  double visual_rmse = 0;
  int replaced_ids = 0;
  int assigned_ids = 0;
  std::optional<std::string> failure_reason;
  std::string model_raw;
  int attempts = 0;
};

/// Never throws for a parsed document: every failure becomes a fallback
/// with failure_reason set.
RewriteOutcome rewrite_document(const svg::SvgDocument& doc, PlanModel& model, const RewriteOptions& options = {});

/// One JSON object (no trailing newline) describing an outcome.
std::string audit_record(const RewriteOutcome& outcome, std::string_view item);

/// Append-only JSON-lines audit file, safe to share between threads.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path, bool append = true);
  void write(const RewriteOutcome& outcome, std::string_view item);
  void write_line(std::string_view json_line);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace meol::rewrite

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

#include "meol/rewrite/rewrite.hpp"

#include <json.hpp>

#include "meol/error.hpp"
#include "meol/svg/ids.hpp"
#include "meol/svg/raster.hpp"
#include "meol/svg/simplify.hpp"

namespace meol::rewrite {

namespace {

struct Candidate {
  svg::SvgDocument doc;
  std::string text;
  double rmse = 0;
  int replaced = 0;
  int assigned = 0;
};

Candidate attempt(const svg::SvgDocument& doc, const svg::RasterImage& original, const embed::PromptPayload& prompt,
                  PlanModel& model, const RewriteOptions& options, std::string& raw) {
  raw = model.complete(prompt);
  RewritePlan plan = parse_rewrite_plan(raw, doc);

  Candidate c;
  for (const auto& label : plan.object_labels) {
    const auto* old = doc.find(label.path)->attr("id");
    if (!old || old->empty()) ++c.assigned;
    else if (*old != label.new_id) ++c.replaced;
  }
  svg::SvgDocument applied = apply_rewrite_plan(doc, plan);
  if (options.auto_simplify) applied = svg::simplify_structure(applied);

  c.text = svg::serialize_svg(applied);
  c.doc = svg::parse_svg(c.text);  // rechecks well-formedness and id uniqueness
  if (!(c.doc == applied)) throw MalformedXml("rewritten document does not survive a serialize/parse round trip");

  auto after = svg::rasterize(c.doc, options.raster_size, options.raster_size);
  c.rmse = svg::visual_distance(original, after);
  if (c.rmse > svg::kVisualTolerance)
    throw VisualCheckFailed("RMSE " + std::to_string(c.rmse) + " exceeds " + std::to_string(svg::kVisualTolerance));

  auto before_ids = svg::inventory_ids(doc).non_descriptive.size();
  auto after_ids = svg::inventory_ids(c.doc).non_descriptive.size();
  if (before_ids > 0 && after_ids >= before_ids)
    throw LabelCheckFailed(std::to_string(after_ids) + " of " + std::to_string(before_ids) +
                           " non-descriptive ids remain");
  return c;
}

std::string original_text(const svg::SvgDocument& doc) {
  return doc.source_text().empty() ? svg::serialize_svg(doc) : doc.source_text();
}

}  // namespace

std::string_view status_name(RewriteStatus s) {
  return s == RewriteStatus::Rewritten ? "rewritten" : "fallback_original";
}

RewriteOutcome rewrite_document(const svg::SvgDocument& doc, PlanModel& model, const RewriteOptions& options) {
  RewriteOutcome out;
  out.document = doc;
  out.svg_text = original_text(doc);

  svg::RasterImage original;
  embed::PromptPayload prompt;
  try {
    original = svg::rasterize(doc, options.raster_size, options.raster_size);
    prompt = build_analysis_prompt(doc, original, options.token_budget);
  } catch (const std::exception& e) {
    out.failure_reason = e.what();
    return out;
  }

  int tries = 1 + std::max(0, options.retries);
  for (int i = 0; i < tries; ++i) {
    ++out.attempts;
    std::string raw;
    try {
      Candidate c = attempt(doc, original, prompt, model, options, raw);
      out.status = RewriteStatus::Rewritten;
      out.document = std::move(c.doc);
      out.svg_text = std::move(c.text);
      out.visual_rmse = c.rmse;
      out.replaced_ids = c.replaced;
      out.assigned_ids = c.assigned;
      out.failure_reason.reset();
      out.model_raw = std::move(raw);
      return out;
    } catch (const std::exception& e) {
      out.failure_reason = e.what();
      out.model_raw = std::move(raw);
    }
  }
  return out;
}

std::string audit_record(const RewriteOutcome& outcome, std::string_view item) {
  nlohmann::json j = nlohmann::json::object();
  j["item"] = std::string(item);
  j["status"] = std::string(status_name(outcome.status));
  j["visual_rmse"] = outcome.visual_rmse;
  j["replaced_ids"] = outcome.replaced_ids;
  j["assigned_ids"] = outcome.assigned_ids;
  j["attempts"] = outcome.attempts;
  j["model_raw"] = outcome.model_raw;
  j["failure_reason"] = outcome.failure_reason ? nlohmann::json(*outcome.failure_reason) : nlohmann::json(nullptr);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

AuditLog::AuditLog(const std::filesystem::path& path, bool append)
    : out_(path, append ? std::ios::app : std::ios::trunc) {
  if (!out_) throw FileUnreadable("cannot open audit log " + path.string());
}

void AuditLog::write(const RewriteOutcome& outcome, std::string_view item) { write_line(audit_record(outcome, item)); }

void AuditLog::write_line(std::string_view json_line) {
  std::lock_guard lock(mu_);
  out_ << json_line << '\n';
  out_.flush();
}

}  // namespace meol::rewrite

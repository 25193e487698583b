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
#include <optional>
#include <string>
#include <vector>

#include "meol/backend/backend.hpp"
#include "meol/bench/cache.hpp"
#include "meol/bench/dataset.hpp"
#include "meol/embed/embed.hpp"
#include "meol/embed/template_registry.hpp"
#include "meol/retrieval/index.hpp"
#include "meol/retrieval/metrics.hpp"
#include "meol/rewrite/plan_model.hpp"

namespace meol::bench {

enum class DatabaseFormat { Image, ImagePlusRawSvg, ImagePlusGeneratedSvg, SvgOnly, GeneratedSvgOnly };

std::string_view format_name(DatabaseFormat f);
std::optional<DatabaseFormat> parse_format(std::string_view s);
embed::Modality format_modality(DatabaseFormat f);
bool format_uses_rewrite(DatabaseFormat f);

struct RunConfig {
  DatabaseFormat database_format = DatabaseFormat::ImagePlusGeneratedSvg;
  embed::Family family = embed::Family::Meol;
  embed::LengthVariant length_variant = embed::LengthVariant::OneWord;
  embed::HiddenStateSelector selector;
  std::vector<int> k_values = retrieval::kDefaultKValues;
  int raster_size = svg::kDefaultRasterSize;
  /// Lowercase queries before embedding (off: queries are used verbatim).
  bool lowercase_queries = false;

  std::string database_template_id() const;
  std::string query_template_id() const;
};

struct RunContext {
  backend::Backend* backend = nullptr;
  /// Required for formats that embed generated SVG.
  rewrite::PlanModel* plan_model = nullptr;
  const embed::TemplateRegistry* registry = nullptr;  // builtin when null
  std::optional<std::filesystem::path> cache_dir;
  /// Rewrite audit lines for generated formats, appended in record order.
  std::optional<std::filesystem::path> audit_path;
  int parallelism = 1;
};

/// Stable hex digest of everything that affects stored embeddings:
/// the config (minus k values) plus backend and plan model names.
std::string config_fingerprint(const RunConfig& config, const RunContext& ctx);

struct RewriteTally {
  std::size_t rewritten = 0;
  std::size_t fallback = 0;
};

struct RunResult {
  retrieval::EvalRun run;
  std::string fingerprint;
  std::string model_id;
  retrieval::RetrievalIndex index;
  std::vector<embed::EmbeddingRecord> queries;  // record order
  std::vector<std::vector<retrieval::RankedResult>> top5;
  RewriteTally rewrites;
  std::size_t cache_hits = 0;
};

/// Embeds every database entry and every Q+A query, then evaluates with
/// each record's own item as ground truth. Backend errors propagate after
/// finished items have been cached, so a rerun resumes where it stopped.
struct DatabaseResult {
  std::vector<embed::EmbeddingRecord> records;  // record order
  std::string fingerprint;
  RewriteTally rewrites;
  std::size_t cache_hits = 0;
};

/// Database side of run_eval only (used to build a standalone index).
DatabaseResult embed_database(const RunConfig& config, const std::vector<DatasetRecord>& records, RunContext& ctx);

RunResult run_eval(const RunConfig& config, const std::vector<DatasetRecord>& records, RunContext& ctx);

/// ranks.csv, summary.csv, top5.csv and report.json under `dir`.
void write_report(const RunResult& result, const RunConfig& config, const std::filesystem::path& dir);
std::string report_json(const RunResult& result, const RunConfig& config);

}  // namespace meol::bench

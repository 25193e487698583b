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

#include "meol/bench/runner.hpp"

#include <array>
#include <atomic>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "meol/error.hpp"
#include "meol/hash.hpp"
#include "meol/rewrite/rewrite.hpp"

namespace meol::bench {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kFormats = {"image", "image_plus_raw_svg", "image_plus_generated_svg",
                                                      "svg_only", "generated_svg_only"};

struct ItemResult {
  embed::EmbeddingRecord db;
  embed::EmbeddingRecord query;
  std::string audit;
  bool rewritten = false;
  std::size_t hits = 0;
};

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const embed::TemplateRegistry& builtin_registry() {
  static const embed::TemplateRegistry r = embed::TemplateRegistry::builtin();
  return r;
}

}  // namespace

std::string_view format_name(DatabaseFormat f) { return kFormats[static_cast<std::size_t>(f)]; }

std::optional<DatabaseFormat> parse_format(std::string_view s) {
  for (std::size_t i = 0; i < kFormats.size(); ++i)
    if (kFormats[i] == s) return static_cast<DatabaseFormat>(i);
  return std::nullopt;
}

embed::Modality format_modality(DatabaseFormat f) {
  switch (f) {
    case DatabaseFormat::Image: return embed::Modality::Image;
    case DatabaseFormat::ImagePlusRawSvg:
    case DatabaseFormat::ImagePlusGeneratedSvg: return embed::Modality::ImageSvg;
    case DatabaseFormat::SvgOnly:
    case DatabaseFormat::GeneratedSvgOnly: return embed::Modality::Svg;
  }
  return embed::Modality::Text;
}

bool format_uses_rewrite(DatabaseFormat f) {
  return f == DatabaseFormat::ImagePlusGeneratedSvg || f == DatabaseFormat::GeneratedSvgOnly;
}

std::string RunConfig::database_template_id() const {
  return embed::TemplateRegistry::id_for(family, format_modality(database_format), length_variant);
}

std::string RunConfig::query_template_id() const {
  return embed::TemplateRegistry::id_for(family, embed::Modality::Text, length_variant);
}

std::string config_fingerprint(const RunConfig& config, const RunContext& ctx) {
  const auto& registry = ctx.registry ? *ctx.registry : builtin_registry();
  FieldHasher h;
  h.add("meol-run-v1");
  h.add(format_name(config.database_format));
  for (const auto& id : {config.database_template_id(), config.query_template_id()}) {
    auto t = registry.get(id);
    h.add(t.template_id).add(t.skeleton).add(t.instruction);
  }
  h.add(static_cast<std::int64_t>(config.selector.layer_offset));
  h.add(config.selector.pooling);
  h.add(static_cast<std::int64_t>(config.raster_size));
  h.add(static_cast<std::int64_t>(config.lowercase_queries));
  h.add(ctx.backend ? ctx.backend->name() : std::string());
  if (format_uses_rewrite(config.database_format) && ctx.plan_model) h.add(ctx.plan_model->model_id());
  else h.add_absent();
  return h.hex();
}

namespace {

struct ItemBatch {
  std::string fingerprint;
  std::vector<ItemResult> items;
  RewriteTally rewrites;
  std::size_t cache_hits = 0;
};

ItemBatch run_items(const RunConfig& config, const std::vector<DatasetRecord>& records, RunContext& ctx,
                    bool with_queries) {
  if (!ctx.backend) throw ConfigError("run needs an embedding backend");
  if (records.empty()) throw EmptyDataset("no records to evaluate");
  bool uses_rewrite = format_uses_rewrite(config.database_format);
  if (uses_rewrite && !ctx.plan_model)
    throw ConfigError("format " + std::string(format_name(config.database_format)) + " needs a plan model");
  const auto& registry = ctx.registry ? *ctx.registry : builtin_registry();
  const embed::PromptTemplate db_tmpl = registry.get(config.database_template_id());
  const embed::PromptTemplate q_tmpl = registry.get(config.query_template_id());
  const std::string fp = config_fingerprint(config, ctx);
  std::string rewrite_fp;
  if (uses_rewrite) {
    FieldHasher h;
    h.add("meol-rewrite-v1").add(ctx.plan_model->model_id()).add(static_cast<std::int64_t>(config.raster_size));
    rewrite_fp = h.hex();
  }
  std::optional<EmbeddingCache> cache;
  if (ctx.cache_dir) cache.emplace(*ctx.cache_dir);

  std::vector<ItemResult> results(records.size());
  auto process = [&](std::size_t i) {
    const DatasetRecord& r = records[i];
    ItemResult& out = results[i];

    std::string svg_text = r.svg_code;
    if (uses_rewrite) {
      std::optional<std::string> blob = cache ? cache->get_blob("rewrite", r.item_id, rewrite_fp) : std::nullopt;
      json j;
      if (blob) {
        j = json::parse(*blob);
        ++out.hits;
      } else {
        rewrite::RewriteOptions opts;
        opts.raster_size = config.raster_size;
        auto outcome = rewrite::rewrite_document(svg::parse_svg(r.svg_code), *ctx.plan_model, opts);
        j = {{"svg_text", outcome.svg_text},
             {"rewritten", outcome.status == rewrite::RewriteStatus::Rewritten},
             {"audit", rewrite::audit_record(outcome, r.item_id)}};
        if (cache) cache->put_blob("rewrite", r.item_id, rewrite_fp, j.dump(-1, ' ', false, json::error_handler_t::replace));
      }
      svg_text = j.at("svg_text").get<std::string>();
      out.rewritten = j.at("rewritten").get<bool>();
      out.audit = j.at("audit").get<std::string>();
    }

    std::optional<embed::EmbeddingRecord> db = cache ? cache->get("db", r.item_id, fp) : std::nullopt;
    if (db) {
      ++out.hits;
    } else {
      embed::ModalityInput input;
      embed::Modality m = format_modality(config.database_format);
      if (m == embed::Modality::Image || m == embed::Modality::ImageSvg) {
        svg::RenderOptions lenient;
        lenient.strict = false;
        input.image = svg::rasterize(svg::parse_svg(r.svg_code), config.raster_size, config.raster_size, lenient);
      }
      if (m == embed::Modality::Svg || m == embed::Modality::ImageSvg) input.svg = svg_text;
      db = embed::embed(*ctx.backend, embed::render_prompt(db_tmpl, input), config.selector, r.item_id);
      if (cache) cache->put("db", fp, *db);
    }
    out.db = std::move(*db);
    if (!with_queries) return;

    std::optional<embed::EmbeddingRecord> q = cache ? cache->get("query", r.item_id, fp) : std::nullopt;
    if (q) {
      ++out.hits;
    } else {
      std::string text = make_query(r);
      if (config.lowercase_queries) text = lowercase(std::move(text));
      q = embed::embed(*ctx.backend, embed::render_prompt(q_tmpl, embed::ModalityInput::of_text(text)), config.selector,
                       r.item_id);
      if (cache) cache->put("query", fp, *q);
    }
    out.query = std::move(*q);
  };

  std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, ctx.parallelism)), 1, records.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t error_index = records.size();
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < records.size();) {
      try {
        process(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  ItemBatch batch{fp, std::move(results), {}, 0};
  std::optional<rewrite::AuditLog> audit;
  if (uses_rewrite && ctx.audit_path) audit.emplace(*ctx.audit_path, true);
  for (auto& item : batch.items) {
    batch.cache_hits += item.hits;
    if (uses_rewrite) {
      (item.rewritten ? batch.rewrites.rewritten : batch.rewrites.fallback)++;
      if (audit) audit->write_line(item.audit);
    }
  }
  return batch;
}

}  // namespace

DatabaseResult embed_database(const RunConfig& config, const std::vector<DatasetRecord>& records, RunContext& ctx) {
  ItemBatch batch = run_items(config, records, ctx, false);
  DatabaseResult res;
  res.fingerprint = batch.fingerprint;
  res.rewrites = batch.rewrites;
  res.cache_hits = batch.cache_hits;
  for (auto& item : batch.items) res.records.push_back(std::move(item.db));
  return res;
}

RunResult run_eval(const RunConfig& config, const std::vector<DatasetRecord>& records, RunContext& ctx) {
  ItemBatch batch = run_items(config, records, ctx, true);
  RunResult res;
  res.fingerprint = batch.fingerprint;
  res.rewrites = batch.rewrites;
  res.cache_hits = batch.cache_hits;
  std::vector<embed::EmbeddingRecord> db_records;
  db_records.reserve(records.size());
  std::vector<retrieval::EvalQuery> queries;
  queries.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& item = batch.items[i];
    queries.push_back({records[i].item_id, item.query.vector, records[i].item_id});
    db_records.push_back(std::move(item.db));
    res.queries.push_back(std::move(item.query));
  }
  res.index = retrieval::RetrievalIndex::build(db_records);
  res.model_id = res.index.model_id;
  res.run = retrieval::evaluate(res.index, queries, config.k_values, ctx.parallelism);
  for (const auto& q : queries) res.top5.push_back(retrieval::query_topk(res.index, q.vector, 5));
  return res;
}

std::string report_json(const RunResult& result, const RunConfig& config) {
  json recall = json::object();
  for (int k : result.run.k_values) recall["Recall@" + std::to_string(k)] = result.run.recall.at(k);
  json j = {{"fingerprint", result.fingerprint},
            {"model_id", result.model_id},
            {"config",
             {{"database_format", std::string(format_name(config.database_format))},
              {"database_template", config.database_template_id()},
              {"query_template", config.query_template_id()},
              {"layer_offset", config.selector.layer_offset},
              {"pooling", config.selector.pooling},
              {"k_values", config.k_values},
              {"raster_size", config.raster_size},
              {"lowercase_queries", config.lowercase_queries}}},
            {"queries", result.run.per_query_rank.size()},
            {"recall", recall},
            {"mrr", result.run.mrr}};
  if (format_uses_rewrite(config.database_format))
    j["rewrites"] = {{"rewritten", result.rewrites.rewritten}, {"fallback_original", result.rewrites.fallback}};
  return j.dump(2);
}

void write_report(const RunResult& result, const RunConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  retrieval::write_rank_csv(result.run, dir / "ranks.csv");
  retrieval::write_summary_csv(result.run, dir / "summary.csv");
  {
    std::ofstream f(dir / "top5.csv", std::ios::trunc);
    if (!f) throw FileUnreadable("cannot write " + (dir / "top5.csv").string());
    f << "query_id,rank,item_id,score\n";
    for (std::size_t i = 0; i < result.top5.size(); ++i)
      for (const auto& r : result.top5[i])
        f << retrieval::csv_field(result.run.per_query_rank[i].query_id) << ',' << r.rank << ','
          << retrieval::csv_field(r.item_id) << ',' << retrieval::format_metric(r.score) << '\n';
  }
  std::ofstream f(dir / "report.json", std::ios::trunc);
  if (!f) throw FileUnreadable("cannot write " + (dir / "report.json").string());
  f << report_json(result, config) << '\n';
}

}  // namespace meol::bench

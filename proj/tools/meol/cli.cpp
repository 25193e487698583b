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

#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "meol/backend/transport.hpp"
#include "meol/bench/ablation.hpp"
#include "meol/bench/runner.hpp"
#include "meol/error.hpp"
#include "meol/retrieval/index_file.hpp"
#include "meol/rewrite/rewrite.hpp"
#include "meol/svg/raster.hpp"

namespace meol::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kBackendKinds = {"mock-hash", "mock-semantic", "remote"};
const std::vector<std::string> kFamilies = {"meol", "prompteol", "keeol"};
const std::vector<std::string> kVariants = {"one_word", "two_words", "three_words", "four_words", "sentence"};
const std::vector<std::string> kPoolings = {"last_token", "mean_all_tokens", "mean"};
const std::vector<std::string> kFormats = {"image", "image_plus_raw_svg", "image_plus_generated_svg", "svg_only",
                                           "generated_svg_only"};
const std::vector<std::string> kKinds = {"layer_sweep", "pooling", "prompt_length", "database_format", "eol_family"};

std::atomic<bool> g_stop{false};

extern "C" void on_stop_signal(int) { g_stop = true; }

struct Globals {
  std::string backend = "mock-semantic";
  std::string addr;
  int parallelism = 1;
  std::uint64_t seed = 0;
  bool json = false;
  std::string templates;
};

struct Selection {
  std::string family = "meol";
  std::string variant = "one_word";
  int layer_offset = 1;
  std::string pooling = "last_token";
  int raster_size = svg::kDefaultRasterSize;
};

struct DatasetOpts {
  std::string dataset;
  std::string format = "image_plus_generated_svg";
  std::string cache;
  std::string audit;
  std::string plans;
  std::string rejects;
  std::vector<int> k = retrieval::kDefaultKValues;
  bool lowercase = false;
};

void add_selection(CLI::App* sub, Selection& s) {
  sub->add_option("--family", s.family, "Prompt family")->check(CLI::IsMember(kFamilies))->capture_default_str();
  sub->add_option("--variant", s.variant, "Length variant of the one-word limitation")
      ->check(CLI::IsMember(kVariants))
      ->capture_default_str();
  sub->add_option("--layer-offset", s.layer_offset, "Hidden layer counted back from the last (0 = last)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--pooling", s.pooling, "Token pooling (mean is short for mean_all_tokens)")->check(CLI::IsMember(kPoolings))->capture_default_str();
  sub->add_option("--raster-size", s.raster_size, "Raster canvas edge in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_dataset(CLI::App* sub, DatasetOpts& d, bool dataset_required) {
  auto* opt = sub->add_option("--dataset", d.dataset, "Dataset JSON lines file")->check(CLI::ExistingFile);
  if (dataset_required) opt->required();
  sub->add_option("--format", d.format, "Database format")->check(CLI::IsMember(kFormats))->capture_default_str();
  sub->add_option("--cache", d.cache, "Embedding cache directory (enables resumption)");
  sub->add_option("--audit", d.audit, "Append rewrite audit lines to this file");
  sub->add_option("--plans", d.plans, "Scripted rewrite plans (JSON lines) instead of the heuristic planner")
      ->check(CLI::ExistingFile);
  sub->add_option("--rejects", d.rejects, "Write malformed dataset lines here");
}

embed::HiddenStateSelector selector_of(const Selection& s) {
  embed::HiddenStateSelector sel;
  sel.layer_offset = s.layer_offset;
  sel.pooling = s.pooling == "mean" ? std::string(backend::kPoolingMean) : s.pooling;
  return sel;
}

bench::RunConfig run_config(const Selection& s, const DatasetOpts& d) {
  bench::RunConfig c;
  c.database_format = *bench::parse_format(d.format);
  c.family = *embed::parse_family(s.family);
  c.length_variant = *embed::parse_variant(s.variant);
  c.selector = selector_of(s);
  c.raster_size = s.raster_size;
  c.k_values = d.k;
  c.lowercase_queries = d.lowercase;
  return c;
}

std::shared_ptr<backend::Backend> open_backend(const Globals& g) {
  std::string addr = g.addr.empty() ? backend::default_address() : g.addr;
  return backend::make_backend(g.backend, addr, g.seed, static_cast<std::size_t>(std::max(1, g.parallelism)));
}

embed::TemplateRegistry open_registry(const Globals& g) {
  return g.templates.empty() ? embed::TemplateRegistry::builtin() : embed::TemplateRegistry::from_file(g.templates);
}

std::shared_ptr<rewrite::PlanModel> open_plan_model(const std::string& plans) {
  if (!plans.empty()) return rewrite::ScriptedPlanModel::from_jsonl(plans);
  return std::make_shared<rewrite::HeuristicPlanModel>();
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileUnreadable("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FileUnreadable("cannot write " + path);
  f << text;
}

std::vector<bench::DatasetRecord> load_dataset(const DatasetOpts& d, std::ostream& err) {
  std::optional<std::filesystem::path> rejects;
  if (!d.rejects.empty()) rejects = d.rejects;
  auto res = bench::ingest(d.dataset, rejects);
  err << "ingested " << res.records.size() << " records";
  if (!res.rejects.empty()) err << " (" << res.rejects.size() << " rejected)";
  err << '\n';
  return std::move(res.records);
}

// ---------------------------------------------------------------- rewrite

struct RewriteCmd {
  std::string input;
  std::string output;
  std::string audit;
  std::string plans;
  std::string item_id;
  std::size_t token_budget = rewrite::kDefaultTokenBudget;
  int retries = 1;
  bool no_simplify = false;
  int raster_size = svg::kDefaultRasterSize;
};

int run_rewrite(const Globals&, const RewriteCmd& c, std::ostream& out, std::ostream& err) {
  auto doc = svg::parse_svg(read_text(c.input));
  auto model = open_plan_model(c.plans);
  rewrite::RewriteOptions opts;
  opts.token_budget = c.token_budget;
  opts.retries = c.retries;
  opts.auto_simplify = !c.no_simplify;
  opts.raster_size = c.raster_size;
  auto outcome = rewrite::rewrite_document(doc, *model, opts);
  std::string item = c.item_id.empty() ? std::filesystem::path(c.input).stem().string() : c.item_id;
  std::string line = rewrite::audit_record(outcome, item);
  if (!c.audit.empty()) rewrite::AuditLog(c.audit).write_line(line);
  if (c.output.empty()) {
    out << outcome.svg_text;
    if (outcome.svg_text.empty() || outcome.svg_text.back() != '\n') out << '\n';
    err << line << '\n';
  } else {
    write_text(c.output, outcome.svg_text);
    out << line << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- embed

struct EmbedCmd {
  Selection sel;
  std::string text;
  std::string svg;
  std::string image;
  bool render = false;
  std::string template_id;
  std::string item_id;
  std::string output;
};

int run_embed(const Globals& g, const EmbedCmd& c, std::ostream& out, std::ostream&) {
  embed::ModalityInput input;
  if (!c.text.empty()) input.text = c.text;
  if (!c.svg.empty()) {
    std::string code = read_text(c.svg);
    if (c.render) {
      svg::RenderOptions lenient;
      lenient.strict = false;
      input.image = svg::rasterize(svg::parse_svg(code), c.sel.raster_size, c.sel.raster_size, lenient);
    }
    input.svg = std::move(code);
  }
  if (!c.image.empty()) input.image = svg::read_png(c.image);
  if (!input.text && !input.svg && !input.image) throw ConfigError("embed needs --text, --svg or --image");
  auto registry = open_registry(g);
  std::string id = c.template_id.empty() ? embed::TemplateRegistry::id_for(*embed::parse_family(c.sel.family),
                                                                          input.modality(),
                                                                          *embed::parse_variant(c.sel.variant))
                                         : c.template_id;
  auto payload = embed::render_prompt(registry.get(id), input);
  auto backend = open_backend(g);
  auto record = embed::embed(*backend, payload, selector_of(c.sel), c.item_id);
  std::string line = bench::record_to_cache_json(record);
  if (c.output.empty()) out << line << '\n';
  else write_text(c.output, line + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- index

struct IndexCmd {
  Selection sel;
  DatasetOpts data;
  std::string embeddings;
  std::string output;
};

std::vector<embed::EmbeddingRecord> read_embeddings(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FileUnreadable("cannot read " + path);
  std::vector<embed::EmbeddingRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(bench::record_from_cache_json(line));
    } catch (const std::exception& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": not an embedding record: " + e.what());
    }
  }
  if (records.empty()) throw EmptyDataset("no embeddings in " + path);
  return records;
}

int run_index(const Globals& g, const IndexCmd& c, std::ostream& out, std::ostream& err) {
  std::vector<embed::EmbeddingRecord> records;
  std::string fingerprint;
  if (!c.embeddings.empty()) {
    records = read_embeddings(c.embeddings);
  } else if (!c.data.dataset.empty()) {
    auto dataset = load_dataset(c.data, err);
    auto backend = open_backend(g);
    auto registry = open_registry(g);
    auto plan_model = open_plan_model(c.data.plans);
    bench::RunContext ctx;
    ctx.backend = backend.get();
    ctx.plan_model = plan_model.get();
    ctx.registry = &registry;
    ctx.parallelism = g.parallelism;
    if (!c.data.cache.empty()) ctx.cache_dir = c.data.cache;
    if (!c.data.audit.empty()) ctx.audit_path = c.data.audit;
    auto res = bench::embed_database(run_config(c.sel, c.data), dataset, ctx);
    records = std::move(res.records);
    fingerprint = res.fingerprint;
  } else {
    throw ConfigError("index needs --dataset or --embeddings");
  }
  auto index = retrieval::RetrievalIndex::build(records);
  retrieval::save_index(index, c.output);
  if (g.json) {
    json j = {{"items", index.size()}, {"dim", index.dim()}, {"model_id", index.model_id}, {"path", c.output}};
    if (!fingerprint.empty()) j["fingerprint"] = fingerprint;
    out << j.dump() << '\n';
  } else {
    out << "indexed " << index.size() << " items (dim " << index.dim() << ", model " << index.model_id << ") -> "
        << c.output << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- query

struct QueryCmd {
  Selection sel;
  std::string index;
  std::string text;
  std::size_t k = 10;
  bool lowercase = false;
};

int run_query(const Globals& g, const QueryCmd& c, std::ostream& out, std::ostream&) {
  auto index = retrieval::load_index(c.index);
  auto registry = open_registry(g);
  std::string id = embed::TemplateRegistry::id_for(*embed::parse_family(c.sel.family), embed::Modality::Text,
                                                   *embed::parse_variant(c.sel.variant));
  std::string text = c.text;
  if (c.lowercase)
    for (auto& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  auto backend = open_backend(g);
  auto record = embed::embed(*backend, embed::render_prompt(registry.get(id), embed::ModalityInput::of_text(text)),
                             selector_of(c.sel));
  if (record.vector.size() != index.dim())
    throw DimMismatch("query has dim " + std::to_string(record.vector.size()) + " but the index has dim " +
                      std::to_string(index.dim()));
  auto results = retrieval::query_topk(index, embed::normalize(record.vector), c.k);
  if (g.json) {
    json rows = json::array();
    for (const auto& r : results) rows.push_back({{"rank", r.rank}, {"item_id", r.item_id}, {"score", r.score}});
    out << json{{"query", c.text}, {"model_id", record.model_id}, {"results", rows}}.dump() << '\n';
  } else {
    for (const auto& r : results) out << r.rank << '\t' << r.item_id << '\t' << retrieval::format_metric(r.score) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- eval / ablate

struct EvalCmd {
  Selection sel;
  DatasetOpts data;
  std::string out_dir;
};

struct AblateCmd {
  Selection sel;
  DatasetOpts data;
  std::string out_dir;
  std::string kind;
  std::size_t bins = bench::kDefaultHistogramBins;
};

struct Pipeline {
  std::shared_ptr<backend::Backend> backend;
  std::shared_ptr<rewrite::PlanModel> plan_model;
  embed::TemplateRegistry registry;
  bench::RunContext ctx;
};

std::unique_ptr<Pipeline> open_pipeline(const Globals& g, const DatasetOpts& d) {
  auto p = std::make_unique<Pipeline>();
  p->backend = open_backend(g);
  p->plan_model = open_plan_model(d.plans);
  p->registry = open_registry(g);
  p->ctx.backend = p->backend.get();
  p->ctx.plan_model = p->plan_model.get();
  p->ctx.registry = &p->registry;
  p->ctx.parallelism = g.parallelism;
  if (!d.cache.empty()) p->ctx.cache_dir = d.cache;
  if (!d.audit.empty()) p->ctx.audit_path = d.audit;
  return p;
}

int run_eval_cmd(const Globals& g, const EvalCmd& c, std::ostream& out, std::ostream& err) {
  auto dataset = load_dataset(c.data, err);
  auto p = open_pipeline(g, c.data);
  auto config = run_config(c.sel, c.data);
  auto res = bench::run_eval(config, dataset, p->ctx);
  bench::write_report(res, config, c.out_dir);
  if (g.json) {
    out << bench::report_json(res, config) << '\n';
    return kExitOk;
  }
  out << "format " << bench::format_name(config.database_format) << ", " << res.run.per_query_rank.size()
      << " queries, model " << res.model_id << '\n';
  for (int k : res.run.k_values) out << "Recall@" << k << ' ' << retrieval::format_metric(res.run.recall.at(k)) << '\n';
  out << "MRR " << retrieval::format_metric(res.run.mrr) << '\n';
  if (bench::format_uses_rewrite(config.database_format))
    out << "rewrites: " << res.rewrites.rewritten << " rewritten, " << res.rewrites.fallback << " fallback\n";
  out << "report written to " << c.out_dir << '\n';
  return kExitOk;
}

int run_ablate(const Globals& g, const AblateCmd& c, std::ostream& out, std::ostream& err) {
  auto dataset = load_dataset(c.data, err);
  auto p = open_pipeline(g, c.data);
  auto kind = *bench::parse_ablation(c.kind);
  auto grid = bench::ablation_grid(kind, run_config(c.sel, c.data));
  auto report = bench::run_ablation(kind, grid, dataset, p->ctx, c.bins);
  std::filesystem::create_directories(c.out_dir);
  auto csv = std::filesystem::path(c.out_dir) / ("ablation_" + c.kind + ".csv");
  bench::write_ablation_csv(report, csv);
  bool has_hist = kind == bench::AblationKind::LayerSweep || kind == bench::AblationKind::Pooling;
  if (has_hist) bench::write_ablation_histograms(report, std::filesystem::path(c.out_dir) / ("histograms_" + c.kind + ".csv"));
  if (g.json) {
    json rows = json::array();
    for (const auto& row : report.rows) {
      json recall = json::object();
      for (int k : row.run.k_values) recall["Recall@" + std::to_string(k)] = row.run.recall.at(k);
      rows.push_back({{"grid_point", row.label}, {"recall", recall}, {"mrr", row.run.mrr}});
    }
    out << json{{"kind", c.kind}, {"rows", rows}}.dump() << '\n';
  } else {
    out << read_text(csv.string());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- serve-mock

struct ServeCmd {
  std::string ready_file;
  std::uint64_t max_requests = 0;
  double duration = 0;
};

int run_serve(const Globals& g, const ServeCmd& c, std::ostream& out, std::ostream&) {
  if (g.backend == "remote") throw ConfigError("serve-mock needs --backend mock-hash or mock-semantic");
  auto backend = open_backend(g);
  backend::MockServer server(backend::Address::parse(g.addr.empty() ? backend::default_address() : g.addr), backend);
  server.start();
  std::string addr = server.address().to_string();
  if (g.json) out << json{{"address", addr}, {"backend", backend->name()}}.dump() << '\n';
  else out << "serving " << backend->name() << " on " << addr << '\n';
  out.flush();
  if (!c.ready_file.empty()) write_text(c.ready_file, addr + "\n");

  g_stop = false;
  auto prev_int = std::signal(SIGINT, on_stop_signal);
  auto prev_term = std::signal(SIGTERM, on_stop_signal);
  auto start = std::chrono::steady_clock::now();
  while (!g_stop) {
    if (c.max_requests && server.requests_served() >= c.max_requests) break;
    if (c.duration > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= c.duration)
      break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  server.stop();
  if (g.json) out << json{{"requests_served", server.requests_served()}}.dump() << '\n';
  else out << "served " << server.requests_served() << " requests\n";
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"meol: training-free multimodal embeddings for SVG retrieval", "meol"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.set_config("--config", "", "Read options from a key = value file ([subcommand] sections); flags win");

  Globals g;
  app.add_option("--backend", g.backend, "Embedding backend")->check(CLI::IsMember(kBackendKinds))->capture_default_str();
  app.add_option("--addr", g.addr, "Embedding server address (host:port or unix:/path); default $META_EMBED_ADDR");
  app.add_option("--parallelism", g.parallelism, "Maximum concurrent backend requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for the mock-hash backend")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable summary on stdout");
  app.add_option("--templates", g.templates, "Prompt template overrides (JSON)")->check(CLI::ExistingFile);

  RewriteCmd rw;
  auto* rw_app = app.add_subcommand("rewrite", "Relabel ids and simplify an SVG, keeping its rendering");
  rw_app->add_option("input", rw.input, "Input SVG file")->required()->check(CLI::ExistingFile);
  rw_app->add_option("-o,--output", rw.output, "Output SVG file (default: stdout)");
  rw_app->add_option("--audit", rw.audit, "Append the audit line to this file");
  rw_app->add_option("--plans", rw.plans, "Scripted plan replies (JSON lines)")->check(CLI::ExistingFile);
  rw_app->add_option("--item-id", rw.item_id, "Item name for the audit line (default: file stem)");
  rw_app->add_option("--token-budget", rw.token_budget, "Analysis prompt token budget")->capture_default_str();
  rw_app->add_option("--retries", rw.retries, "Extra planning attempts after a failure")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rw_app->add_flag("--no-simplify", rw.no_simplify, "Skip the render-neutral structural simplifier");
  rw_app->add_option("--raster-size", rw.raster_size, "Raster canvas edge for the visual check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EmbedCmd em;
  auto* em_app = app.add_subcommand("embed", "Embed one text, SVG, image, or image+SVG input");
  add_selection(em_app, em.sel);
  auto* em_text = em_app->add_option("--text", em.text, "Text input");
  auto* em_svg = em_app->add_option("--svg", em.svg, "SVG file input")->check(CLI::ExistingFile);
  auto* em_image = em_app->add_option("--image", em.image, "PNG image input")->check(CLI::ExistingFile);
  auto* em_render = em_app->add_flag("--render", em.render, "Also attach the rasterized --svg as the image");
  em_text->excludes(em_svg)->excludes(em_image)->excludes(em_render);
  em_render->needs(em_svg)->excludes(em_image);
  em_app->add_option("--template", em.template_id, "Template id (default: chosen from family, modality, variant)");
  em_app->add_option("--item-id", em.item_id, "Item id stored with the record");
  em_app->add_option("-o,--output", em.output, "Write the record here (default: stdout)");

  IndexCmd ix;
  auto* ix_app = app.add_subcommand("index", "Build a retrieval index from a dataset or embedding records");
  add_selection(ix_app, ix.sel);
  add_dataset(ix_app, ix.data, false);
  auto* ix_emb = ix_app->add_option("--embeddings", ix.embeddings, "Embedding records (JSON lines) from `meol embed`")
                     ->check(CLI::ExistingFile);
  ix_emb->excludes(ix_app->get_option("--dataset"));
  ix_app->add_option("-o,--output", ix.output, "Index file to write")->required();

  QueryCmd qu;
  auto* qu_app = app.add_subcommand("query", "Rank indexed items against a text query");
  add_selection(qu_app, qu.sel);
  qu_app->add_option("--index", qu.index, "Index file")->required()->check(CLI::ExistingFile);
  qu_app->add_option("--text", qu.text, "Query text")->required();
  qu_app->add_option("-k", qu.k, "Number of results")->check(CLI::PositiveNumber)->capture_default_str();
  qu_app->add_flag("--lowercase-queries", qu.lowercase, "Lowercase the query before embedding");

  EvalCmd ev;
  auto* ev_app = app.add_subcommand("eval", "Run the text-to-SVG retrieval benchmark");
  add_selection(ev_app, ev.sel);
  add_dataset(ev_app, ev.data, true);
  ev_app->add_option("--k", ev.data.k, "Recall cutoffs")->delimiter(',')->check(CLI::PositiveNumber);
  ev_app->add_flag("--lowercase-queries", ev.data.lowercase, "Lowercase queries before embedding");
  ev_app->add_option("--out", ev.out_dir, "Report directory")->required();

  AblateCmd ab;
  auto* ab_app = app.add_subcommand("ablate", "Run one ablation grid and write its CSVs");
  add_selection(ab_app, ab.sel);
  add_dataset(ab_app, ab.data, true);
  ab_app->add_option("--kind", ab.kind, "Ablation grid")->required()->check(CLI::IsMember(kKinds));
  ab_app->add_option("--k", ab.data.k, "Recall cutoffs")->delimiter(',')->check(CLI::PositiveNumber);
  ab_app->add_flag("--lowercase-queries", ab.data.lowercase, "Lowercase queries before embedding");
  ab_app->add_option("--bins", ab.bins, "Self-similarity histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  ab_app->add_option("--out", ab.out_dir, "Output directory")->required();

  ServeCmd sv;
  auto* sv_app = app.add_subcommand("serve-mock", "Serve a mock backend over the embedding wire protocol");
  sv_app->add_option("--ready-file", sv.ready_file, "Write the bound address here once listening");
  sv_app->add_option("--max-requests", sv.max_requests, "Stop after this many requests (0: no limit)");
  sv_app->add_option("--duration", sv.duration, "Stop after this many seconds (0: until SIGINT/SIGTERM)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUser;
  }

  try {
    if (rw_app->parsed()) return run_rewrite(g, rw, out, err);
    if (em_app->parsed()) return run_embed(g, em, out, err);
    if (ix_app->parsed()) return run_index(g, ix, out, err);
    if (qu_app->parsed()) return run_query(g, qu, out, err);
    if (ev_app->parsed()) return run_eval_cmd(g, ev, out, err);
    if (ab_app->parsed()) return run_ablate(g, ab, out, err);
    if (sv_app->parsed()) return run_serve(g, sv, out, err);
  } catch (const Error& e) {
    err << "meol: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "meol: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("meol");
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace meol::cli

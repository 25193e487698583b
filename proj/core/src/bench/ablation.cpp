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

#include "meol/bench/ablation.hpp"

#include <array>
#include <fstream>

#include "meol/error.hpp"

namespace meol::bench {

namespace {

constexpr std::array<std::string_view, 5> kKinds = {"layer_sweep", "pooling", "prompt_length", "database_format",
                                                    "eol_family"};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw FileUnreadable("cannot write " + path.string());
  return f;
}

}  // namespace

std::string_view ablation_name(AblationKind k) { return kKinds[static_cast<std::size_t>(k)]; }

std::optional<AblationKind> parse_ablation(std::string_view s) {
  for (std::size_t i = 0; i < kKinds.size(); ++i)
    if (kKinds[i] == s) return static_cast<AblationKind>(i);
  return std::nullopt;
}

std::vector<GridPoint> ablation_grid(AblationKind kind, const RunConfig& base, int layer_count) {
  std::vector<GridPoint> grid;
  switch (kind) {
    case AblationKind::LayerSweep:
      for (int off = 0; off < layer_count; ++off) {
        RunConfig c = base;
        c.selector.layer_offset = off;
        grid.push_back({std::to_string(off), c});
      }
      break;
    case AblationKind::Pooling:
      for (auto [layer, lname] : {std::pair{1, "penultimate"}, std::pair{0, "last"}}) {
        for (auto [pool, pname] : {std::pair{backend::kPoolingLastToken, "last_token"}, std::pair{backend::kPoolingMean, "mean"}}) {
          RunConfig c = base;
          c.selector.layer_offset = layer;
          c.selector.pooling = std::string(pool);
          grid.push_back({std::string(lname) + "/" + pname, c});
        }
      }
      break;
    case AblationKind::PromptLength: {
      const std::array<std::pair<embed::LengthVariant, const char*>, 5> rows = {{
          {embed::LengthVariant::OneWord, "One word"},
          {embed::LengthVariant::TwoWords, "Two words"},
          {embed::LengthVariant::ThreeWords, "Three words"},
          {embed::LengthVariant::FourWords, "Four words"},
          {embed::LengthVariant::Sentence, "Sentence"},
      }};
      for (auto [v, label] : rows) {
        RunConfig c = base;
        c.family = embed::Family::Meol;
        c.length_variant = v;
        grid.push_back({label, c});
      }
      break;
    }
    case AblationKind::DatabaseFormat:
      for (auto f : {DatabaseFormat::Image, DatabaseFormat::ImagePlusRawSvg, DatabaseFormat::ImagePlusGeneratedSvg,
                     DatabaseFormat::SvgOnly, DatabaseFormat::GeneratedSvgOnly}) {
        RunConfig c = base;
        c.database_format = f;
        grid.push_back({std::string(format_name(f)), c});
      }
      break;
    case AblationKind::EolFamily:
      for (auto [f, label] : {std::pair{embed::Family::PromptEol, "PromptEOL"}, std::pair{embed::Family::KeEol, "KEEOL"},
                              std::pair{embed::Family::Meol, "mEOL"}}) {
        RunConfig c = base;
        c.family = f;
        c.length_variant = embed::LengthVariant::OneWord;
        grid.push_back({label, c});
      }
      break;
  }
  return grid;
}

AblationReport run_ablation(AblationKind kind, const std::vector<GridPoint>& grid,
                            const std::vector<DatasetRecord>& records, RunContext& ctx, std::size_t histogram_bins) {
  AblationReport report{kind, {}};
  bool with_hist = kind == AblationKind::LayerSweep || kind == AblationKind::Pooling;
  for (const auto& point : grid) {
    RunResult res = run_eval(point.config, records, ctx);
    AblationRow row{point.label, point.config, std::move(res.run), std::nullopt};
    if (with_hist && res.index.size() >= 2) row.histogram = retrieval::self_similarity_histogram(res.index, histogram_bins);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_ablation_csv(const AblationReport& report, const std::filesystem::path& path) {
  auto f = open_out(path);
  std::vector<int> ks = report.rows.empty() ? retrieval::kDefaultKValues : report.rows.front().run.k_values;
  f << "grid_point";
  for (int k : ks) f << ",Recall@" << k;
  f << ",MRR\n";
  for (const auto& row : report.rows) {
    f << retrieval::csv_field(row.label);
    for (int k : ks) f << ',' << retrieval::format_metric(row.run.recall.at(k));
    f << ',' << retrieval::format_metric(row.run.mrr) << '\n';
  }
}

void write_ablation_histograms(const AblationReport& report, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "grid_point,bin_lo,bin_hi,count\n";
  for (const auto& row : report.rows) {
    if (!row.histogram) continue;
    auto e = row.histogram->edges();
    for (std::size_t i = 0; i < row.histogram->counts.size(); ++i)
      f << retrieval::csv_field(row.label) << ',' << retrieval::format_metric(e[i]) << ','
        << retrieval::format_metric(e[i + 1]) << ',' << row.histogram->counts[i] << '\n';
  }
}

}  // namespace meol::bench

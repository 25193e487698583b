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

#include "meol/bench/runner.hpp"

namespace meol::bench {

enum class AblationKind { LayerSweep, Pooling, PromptLength, DatabaseFormat, EolFamily };

std::string_view ablation_name(AblationKind k);  // "layer_sweep", "pooling", ...
std::optional<AblationKind> parse_ablation(std::string_view s);

struct GridPoint {
  std::string label;
  RunConfig config;
};

/// Grid for a kind, varying one aspect of `base`. The layer sweep covers
/// offsets 0 .. layer_count-1.
std::vector<GridPoint> ablation_grid(AblationKind kind, const RunConfig& base, int layer_count = backend::kMockLayerCount);

struct AblationRow {
  std::string label;
  RunConfig config;
  retrieval::EvalRun run;
  std::optional<retrieval::Histogram> histogram;  // layer and pooling kinds
};

struct AblationReport {
  AblationKind kind;
  std::vector<AblationRow> rows;
};

inline constexpr std::size_t kDefaultHistogramBins = 40;

AblationReport run_ablation(AblationKind kind, const std::vector<GridPoint>& grid,
                            const std::vector<DatasetRecord>& records, RunContext& ctx,
                            std::size_t histogram_bins = kDefaultHistogramBins);

/// grid_point,Recall@1,Recall@5,Recall@10,Recall@20,MRR (k columns follow
/// each row's k values).
void write_ablation_csv(const AblationReport& report, const std::filesystem::path& path);
/// grid_point,bin_lo,bin_hi,count for every row that has a histogram.
void write_ablation_histograms(const AblationReport& report, const std::filesystem::path& path);

}  // namespace meol::bench

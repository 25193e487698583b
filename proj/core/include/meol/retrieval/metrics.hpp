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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "meol/retrieval/index.hpp"

namespace meol::retrieval {

inline const std::vector<int> kDefaultKValues = {1, 5, 10, 20};

struct EvalQuery {
  std::string query_id;
  std::vector<double> vector;
  std::string ground_truth;
};

struct QueryRank {
  std::string query_id;
  std::size_t rank = 0;

  bool operator==(const QueryRank&) const = default;
};

struct EvalRun {
  std::vector<QueryRank> per_query_rank;  // query order
  std::vector<int> k_values;
  std::map<int, double> recall;
  double mrr = 0;
};

/// Full-ranking evaluation. Queries are scored in parallel when
/// `parallelism` > 1; the reduction runs in query order.
EvalRun evaluate(const RetrievalIndex& index, const std::vector<EvalQuery>& queries,
                 const std::vector<int>& k_values = kDefaultKValues, int parallelism = 1);

/// Recall@k and MRR from ranks alone, summed in the given order.
EvalRun summarize(std::vector<QueryRank> ranks, const std::vector<int>& k_values);

struct Histogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;

  std::vector<double> edges() const;
  std::uint64_t total() const;
  bool operator==(const Histogram&) const = default;
};

/// Bin for a cosine value over [-1, 1]; 1.0 lands in the last bin.
std::size_t histogram_bin(double cosine, std::size_t bins);

/// Pairwise cosine counts over all unordered pairs of distinct items.
Histogram self_similarity_histogram(const RetrievalIndex& index, std::size_t bins);

void write_rank_csv(const EvalRun& run, const std::filesystem::path& path);
/// Rows "metric,value" for each Recall@k then MRR.
void write_summary_csv(const EvalRun& run, const std::filesystem::path& path);
void write_histogram_csv(const Histogram& h, const std::filesystem::path& path);

/// Field quoted per RFC 4180 when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);
/// Fixed 6-decimal formatting used in every report.
std::string format_metric(double v);

}  // namespace meol::retrieval

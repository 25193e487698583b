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

#include "meol/retrieval/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "meol/error.hpp"

namespace meol::retrieval {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw FileUnreadable("cannot write " + path.string());
  return f;
}

}  // namespace

EvalRun summarize(std::vector<QueryRank> ranks, const std::vector<int>& k_values) {
  EvalRun run;
  run.k_values = k_values;
  run.per_query_rank = std::move(ranks);
  const double n = static_cast<double>(run.per_query_rank.size());
  double rr = 0;
  for (const auto& q : run.per_query_rank) rr += 1.0 / static_cast<double>(q.rank);
  run.mrr = n > 0 ? rr / n : 0.0;
  for (int k : k_values) {
    std::size_t hits = 0;
    for (const auto& q : run.per_query_rank)
      if (q.rank <= static_cast<std::size_t>(k)) ++hits;
    run.recall[k] = n > 0 ? static_cast<double>(hits) / n : 0.0;
  }
  return run;
}

EvalRun evaluate(const RetrievalIndex& index, const std::vector<EvalQuery>& queries, const std::vector<int>& k_values,
                 int parallelism) {
  for (int k : k_values)
    if (k < 1) throw ConfigError("k values must be at least 1");
  std::vector<std::size_t> targets(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    auto pos = index.position(queries[i].ground_truth);
    if (!pos)
      throw UnknownGroundTruth("query \"" + queries[i].query_id + "\" names unknown item \"" + queries[i].ground_truth +
                               "\"");
    targets[i] = *pos;
  }
  std::vector<QueryRank> ranks(queries.size());
  auto work = [&](std::size_t i) { ranks[i] = {queries[i].query_id, rank_of(index, queries[i].vector, targets[i])}; };
  std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, parallelism)), 1, queries.size() ? queries.size() : 1);
  if (threads <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < queries.size();) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return summarize(std::move(ranks), k_values);
}

std::vector<double> Histogram::edges() const {
  std::vector<double> e(counts.size() + 1);
  for (std::size_t i = 0; i <= counts.size(); ++i)
    e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(counts.size());
  return e;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::size_t histogram_bin(double cosine, std::size_t bins) {
  double c = std::clamp(cosine, -1.0, 1.0);
  auto b = static_cast<std::size_t>(std::floor((c + 1.0) / 2.0 * static_cast<double>(bins)));
  return std::min(b, bins - 1);
}

Histogram self_similarity_histogram(const RetrievalIndex& index, std::size_t bins) {
  if (index.size() < 2) throw TooFewItems("need at least 2 items, have " + std::to_string(index.size()));
  if (bins < 1) throw ConfigError("bin count must be at least 1");
  Histogram h;
  h.counts.assign(bins, 0);
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = i + 1; j < index.size(); ++j) ++h.counts[histogram_bin(dot(index.vector(i), index.vector(j)), bins)];
  return h;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_rank_csv(const EvalRun& run, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "query_id,rank\n";
  for (const auto& q : run.per_query_rank) f << csv_field(q.query_id) << ',' << q.rank << '\n';
}

void write_summary_csv(const EvalRun& run, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "metric,value\n";
  for (int k : run.k_values) f << "Recall@" << k << ',' << format_metric(run.recall.at(k)) << '\n';
  f << "MRR," << format_metric(run.mrr) << '\n';
}

void write_histogram_csv(const Histogram& h, const std::filesystem::path& path) {
  auto f = open_out(path);
  auto e = h.edges();
  f << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) f << format_metric(e[i]) << ',' << format_metric(e[i + 1]) << ',' << h.counts[i] << '\n';
}

}  // namespace meol::retrieval

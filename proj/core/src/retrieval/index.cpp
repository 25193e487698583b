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

#include "meol/retrieval/index.hpp"

#include <algorithm>
#include <numeric>

#include "meol/error.hpp"

namespace meol::retrieval {

namespace {

std::vector<double> checked_query(const RetrievalIndex& index, std::span<const double> query) {
  if (query.size() != index.dim())
    throw DimMismatch("query has dim " + std::to_string(query.size()) + ", index has dim " + std::to_string(index.dim()));
  return embed::normalize(query);
}

bool ranks_before(double sa, const std::string& ia, double sb, const std::string& ib) {
  if (sa != sb) return sa > sb;
  return ia < ib;
}

}  // namespace

RetrievalIndex RetrievalIndex::build(const std::vector<embed::EmbeddingRecord>& records) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> vecs;
  ids.reserve(records.size());
  vecs.reserve(records.size());
  for (const auto& r : records) {
    ids.push_back(r.item_id);
    vecs.push_back(r.vector);
  }
  RetrievalIndex idx = build(std::move(ids), vecs);
  if (!records.empty()) idx.model_id = records.front().model_id;
  return idx;
}

RetrievalIndex RetrievalIndex::build(std::vector<std::string> item_ids, const std::vector<std::vector<double>>& vectors) {
  if (item_ids.size() != vectors.size()) throw DimMismatch("item id and vector counts differ");
  if (vectors.empty()) throw EmptyDataset("cannot build an index from zero records");
  std::size_t dim = vectors.front().size();
  std::vector<double> data;
  data.reserve(dim * vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim)
      throw DimMismatch("record \"" + item_ids[i] + "\" has dim " + std::to_string(vectors[i].size()) + ", expected " +
                        std::to_string(dim));
    std::vector<double> unit;
    try {
      unit = embed::normalize(vectors[i]);
    } catch (const ZeroVector&) {
      throw ZeroVector("record \"" + item_ids[i] + "\" has a zero vector");
    }
    data.insert(data.end(), unit.begin(), unit.end());
  }
  return from_stored(std::move(item_ids), std::move(data), dim);
}

RetrievalIndex RetrievalIndex::from_stored(std::vector<std::string> item_ids, std::vector<double> data, std::size_t dim) {
  if (dim == 0) throw DimMismatch("index dim must be positive");
  if (data.size() != item_ids.size() * dim) throw DimMismatch("vector data does not match N x dim");
  RetrievalIndex idx;
  idx.dim_ = dim;
  idx.ids_ = std::move(item_ids);
  idx.data_ = std::move(data);
  for (std::size_t i = 0; i < idx.ids_.size(); ++i)
    if (!idx.pos_.emplace(idx.ids_[i], i).second) throw DuplicateItem("item id \"" + idx.ids_[i] + "\" appears twice");
  return idx;
}

std::optional<std::size_t> RetrievalIndex::position(std::string_view item_id) const {
  auto it = pos_.find(std::string(item_id));
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> score_all(const RetrievalIndex& index, std::span<const double> query) {
  auto q = checked_query(index, query);
  std::vector<double> out(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out[i] = dot(index.vector(i), q);
  return out;
}

std::vector<RankedResult> query_topk(const RetrievalIndex& index, std::span<const double> query, std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  auto scores = score_all(index, query);
  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& ids = index.item_ids();
  auto cmp = [&](std::size_t a, std::size_t b) { return ranks_before(scores[a], ids[a], scores[b], ids[b]); };
  std::size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), cmp);
  std::vector<RankedResult> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({ids[order[i]], scores[order[i]], i + 1});
  return out;
}

std::size_t rank_of(const RetrievalIndex& index, std::span<const double> query, std::size_t target) {
  auto scores = score_all(index, query);
  const auto& ids = index.item_ids();
  std::size_t rank = 1;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (i != target && ranks_before(scores[i], ids[i], scores[target], ids[target])) ++rank;
  return rank;
}

}  // namespace meol::retrieval

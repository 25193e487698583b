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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "meol/embed/embed.hpp"

namespace meol::retrieval {

/// Exact cosine index. Vectors are stored unit-normalized in insertion
/// order; ties in score are broken by ascending item id.
class RetrievalIndex {
 public:
  RetrievalIndex() = default;

  static RetrievalIndex build(const std::vector<embed::EmbeddingRecord>& records);
  static RetrievalIndex build(std::vector<std::string> item_ids, const std::vector<std::vector<double>>& vectors);
  /// Takes vectors as stored (row-major, already unit length); used when
  /// loading a saved index so that values are not renormalized.
  static RetrievalIndex from_stored(std::vector<std::string> item_ids, std::vector<double> data, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& item_ids() const { return ids_; }
  std::span<const double> vector(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::optional<std::size_t> position(std::string_view item_id) const;

  std::string model_id;

  bool operator==(const RetrievalIndex& o) const { return dim_ == o.dim_ && ids_ == o.ids_ && data_ == o.data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> pos_;
};

struct RankedResult {
  std::string item_id;
  double score = 0;
  std::size_t rank = 0;  // 1-based

  bool operator==(const RankedResult&) const = default;
};

/// Dot product accumulated left to right.
double dot(std::span<const double> a, std::span<const double> b);

/// Cosine score of every stored item against `query`, in index order.
std::vector<double> score_all(const RetrievalIndex& index, std::span<const double> query);

std::vector<RankedResult> query_topk(const RetrievalIndex& index, std::span<const double> query, std::size_t k);

/// 1-based position of item `target` in the full ranking for `query`.
std::size_t rank_of(const RetrievalIndex& index, std::span<const double> query, std::size_t target);

}  // namespace meol::retrieval

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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace meol::bench {

struct DatasetRecord {
  std::string item_id;
  std::string svg_code;
  std::string question;
  std::map<std::string, std::string> options;  // keys among "A".."D"
  std::string answer;                          // one of the option keys

  bool operator==(const DatasetRecord&) const = default;
};

struct Reject {
  std::size_t line = 0;  // 1-based; 0 when the whole file was one JSON array
  std::string reason;
  std::string raw;
};

struct IngestResult {
  std::vector<DatasetRecord> records;
  std::vector<Reject> rejects;
};

/// Reads JSON lines (or one JSON array) of records. Besides the canonical
/// fields (item_id, svg, question, options, answer) the reader accepts the
/// layouts found in upstream question-answering dumps: id/uid/qid/index for
/// the id, code/svg_code for the SVG, options as a list or as "A. ..." text,
/// and answers such as "(b)", "B. text" or the option text itself.
/// Invalid entries go to `rejects`; if `rejects_path` is set they are also
/// written there as JSON lines. Throws EmptyDataset when nothing is valid.
IngestResult ingest(const std::filesystem::path& path,
                    const std::optional<std::filesystem::path>& rejects_path = std::nullopt);

/// Same, from in-memory text.
IngestResult ingest_text(std::string_view text);

std::string record_to_json(const DatasetRecord& r);
/// Canonical JSON lines, one record per line.
void export_records(const std::vector<DatasetRecord>& records, const std::filesystem::path& path);

/// Trimmed question, one space, trimmed answer text. An empty question
/// yields the answer text alone.
std::string make_query(const DatasetRecord& r);

}  // namespace meol::bench

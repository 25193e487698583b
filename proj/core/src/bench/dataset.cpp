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

#include "meol/bench/dataset.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "meol/error.hpp"
#include "meol/svg/document.hpp"

namespace meol::bench {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const json* first_of(const json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = j.find(k);
    if (it != j.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

struct Invalid {
  std::string reason;
};

std::string as_string(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw Invalid{std::string(what) + " must be a string"};
}

bool is_option_key(std::string_view k) { return k.size() == 1 && k[0] >= 'A' && k[0] <= 'D'; }

// "A. text\nB: text" or "(A) text (B) text" style option blocks.
std::map<std::string, std::string> parse_option_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::vector<std::pair<char, std::size_t>> marks;  // letter, start of its text
  std::vector<std::size_t> mark_begin;
  for (std::size_t i = 0; i < text.size(); ++i) {
    bool boundary = i == 0 || text[i - 1] == '\n' || text[i - 1] == ' ' || text[i - 1] == '\t';
    if (!boundary) continue;
    std::size_t j = i;
    bool paren = text[j] == '(';
    if (paren) ++j;
    if (j >= text.size()) break;
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[j])));
    char expect = static_cast<char>('A' + marks.size());
    if (c != expect || marks.size() >= 4) continue;
    ++j;
    if (j >= text.size()) continue;
    if (paren) {
      if (text[j] != ')') continue;
      ++j;
    } else if (text[j] != '.' && text[j] != ':' && text[j] != ')') {
      continue;
    } else {
      ++j;
    }
    mark_begin.push_back(i);
    marks.emplace_back(c, j);
  }
  for (std::size_t m = 0; m < marks.size(); ++m) {
    std::size_t end = m + 1 < marks.size() ? mark_begin[m + 1] : text.size();
    out[std::string(1, marks[m].first)] = trim(std::string_view(text).substr(marks[m].second, end - marks[m].second));
  }
  return out;
}

std::map<std::string, std::string> parse_options(const json& v) {
  std::map<std::string, std::string> out;
  if (v.is_object()) {
    for (const auto& [k, val] : v.items()) {
      std::string key = k;
      for (auto& c : key) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (!is_option_key(key)) throw Invalid{"option key \"" + k + "\" is not one of A-D"};
      out[key] = as_string(val, "option text");
    }
  } else if (v.is_array()) {
    if (v.size() > 4) throw Invalid{"more than four options"};
    for (std::size_t i = 0; i < v.size(); ++i) out[std::string(1, static_cast<char>('A' + i))] = as_string(v[i], "option text");
  } else if (v.is_string()) {
    out = parse_option_text(v.get<std::string>());
    if (out.empty()) throw Invalid{"could not find A-D options in option text"};
  } else {
    throw Invalid{"options must be an object, list or text"};
  }
  if (out.empty()) throw Invalid{"no options"};
  return out;
}

std::string parse_answer(const json& v, const std::map<std::string, std::string>& options) {
  std::string raw = trim(as_string(v, "answer"));
  if (raw.empty()) throw Invalid{"empty answer"};
  std::string letter;
  std::size_t i = raw[0] == '(' ? 1 : 0;
  if (i < raw.size()) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i])));
    bool alone = i + 1 == raw.size() || raw[i + 1] == ')' || raw[i + 1] == '.' || raw[i + 1] == ':';
    if (c >= 'A' && c <= 'D' && alone) letter = std::string(1, c);
  }
  if (letter.empty()) {
    for (const auto& [k, text] : options)
      if (trim(text) == raw) letter = k;
  }
  if (letter.empty()) throw Invalid{"answer \"" + raw + "\" names no option"};
  if (!options.count(letter)) throw Invalid{"answer " + letter + " is not among the options"};
  return letter;
}

DatasetRecord parse_record(const json& j, std::size_t ordinal) {
  if (!j.is_object()) throw Invalid{"entry is not a JSON object"};
  DatasetRecord r;
  if (const json* id = first_of(j, {"item_id", "id", "uid", "qid", "index", "idx"})) r.item_id = trim(as_string(*id, "item_id"));
  else r.item_id = "item-" + std::to_string(ordinal);
  if (r.item_id.empty()) throw Invalid{"empty item_id"};
  const json* svg = first_of(j, {"svg", "svg_code", "code"});
  if (!svg) throw Invalid{"missing \"svg\""};
  r.svg_code = as_string(*svg, "svg");
  const json* q = first_of(j, {"question", "query", "Q"});
  if (!q) throw Invalid{"missing \"question\""};
  r.question = as_string(*q, "question");
  const json* opts = first_of(j, {"options", "choices", "option"});
  if (!opts) throw Invalid{"missing \"options\""};
  r.options = parse_options(*opts);
  const json* ans = first_of(j, {"answer", "gt", "label"});
  if (!ans) throw Invalid{"missing \"answer\""};
  r.answer = parse_answer(*ans, r.options);
  try {
    svg::parse_svg(r.svg_code);
  } catch (const Error& e) {
    throw Invalid{std::string("svg does not parse: ") + e.what()};
  }
  return r;
}

IngestResult ingest_entries(const std::vector<std::pair<std::size_t, std::string>>& lines) {
  IngestResult res;
  std::set<std::string> seen;
  std::size_t ordinal = 0;
  for (const auto& [lineno, raw] : lines) {
    ++ordinal;
    try {
      json j;
      try {
        j = json::parse(raw);
      } catch (const json::parse_error& e) {
        throw Invalid{std::string("not valid JSON: ") + e.what()};
      }
      DatasetRecord r = parse_record(j, ordinal);
      if (!seen.insert(r.item_id).second) throw Invalid{"duplicate item_id \"" + r.item_id + "\""};
      res.records.push_back(std::move(r));
    } catch (const Invalid& bad) {
      res.rejects.push_back({lineno, bad.reason, raw});
    }
  }
  return res;
}

}  // namespace

IngestResult ingest_text(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> entries;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    json arr;
    try {
      arr = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw EmptyDataset(std::string("dataset array is not valid JSON: ") + e.what());
    }
    for (const auto& e : arr) entries.emplace_back(0, e.dump());
  } else {
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++lineno;
      auto line = text.substr(pos, nl - pos);
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) entries.emplace_back(lineno, std::string(line));
      pos = nl + 1;
    }
  }
  IngestResult res = ingest_entries(entries);
  if (res.records.empty())
    throw EmptyDataset("no valid records (" + std::to_string(res.rejects.size()) + " rejected)");
  return res;
}

IngestResult ingest(const std::filesystem::path& path, const std::optional<std::filesystem::path>& rejects_path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileUnreadable("cannot read dataset " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  IngestResult res;
  try {
    res = ingest_text(ss.str());
  } catch (const EmptyDataset& e) {
    throw EmptyDataset(path.string() + ": " + e.what());
  }
  if (rejects_path) {
    std::ofstream out(*rejects_path, std::ios::trunc);
    if (!out) throw FileUnreadable("cannot write " + rejects_path->string());
    for (const auto& r : res.rejects) {
      json j = {{"line", r.line}, {"reason", r.reason}, {"raw", r.raw}};
      out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
  }
  return res;
}

std::string record_to_json(const DatasetRecord& r) {
  json opts = json::object();
  for (const auto& [k, v] : r.options) opts[k] = v;
  json j = {{"item_id", r.item_id}, {"svg", r.svg_code}, {"question", r.question}, {"options", opts}, {"answer", r.answer}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

void export_records(const std::vector<DatasetRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw FileUnreadable("cannot write " + path.string());
  for (const auto& r : records) out << record_to_json(r) << '\n';
}

std::string make_query(const DatasetRecord& r) {
  std::string q = trim(r.question);
  auto it = r.options.find(r.answer);
  std::string a = it == r.options.end() ? std::string() : trim(it->second);
  if (q.empty()) return a;
  return q + " " + a;
}

}  // namespace meol::bench

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

#include "meol/retrieval/index_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "meol/error.hpp"

namespace meol::retrieval {

namespace {

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::is_unsigned_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view b) : b_(b) {}
  template <typename T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return v;
  }
  std::string_view bytes(std::size_t n, const char* what) {
    need(n, what);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(std::size_t n, const char* what) {
    if (b_.size() - pos_ < n) throw IndexFormatError(std::string("truncated file while reading ") + what);
  }
  std::string_view b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string index_to_bytes(const RetrievalIndex& index) {
  std::string out(kIndexMagic);
  put<std::uint32_t>(out, kIndexVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(index.dim()));
  put<std::uint64_t>(out, index.size());
  for (const auto& id : index.item_ids()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.append(id);
  }
  for (std::size_t i = 0; i < index.size(); ++i)
    for (double x : index.vector(i)) put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
  return out;
}

RetrievalIndex index_from_bytes(std::string_view bytes) {
  Reader r(bytes);
  if (r.bytes(kIndexMagic.size(), "magic") != kIndexMagic) throw IndexFormatError("bad magic");
  auto version = r.get<std::uint32_t>("version");
  if (version != kIndexVersion) throw IndexFormatError("unsupported version " + std::to_string(version));
  auto dim = r.get<std::uint32_t>("dim");
  auto n = r.get<std::uint64_t>("item count");
  if (dim == 0) throw IndexFormatError("dim is zero");
  if (n > bytes.size()) throw IndexFormatError("item count exceeds file size");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto len = r.get<std::uint32_t>("item id length");
    ids.emplace_back(r.bytes(len, "item id"));
  }
  std::vector<double> data;
  data.reserve(n * dim);
  for (std::uint64_t i = 0; i < n * dim; ++i) data.push_back(std::bit_cast<float>(r.get<std::uint32_t>("vectors")));
  if (!r.done()) throw IndexFormatError("trailing bytes after vectors");
  try {
    return RetrievalIndex::from_stored(std::move(ids), std::move(data), dim);
  } catch (const DuplicateItem& e) {
    throw IndexFormatError(e.what());
  }
}

void save_index(const RetrievalIndex& index, const std::filesystem::path& path) {
  std::string bytes = index_to_bytes(index);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FileUnreadable("cannot write " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw FileUnreadable("cannot write " + path.string());
}

RetrievalIndex load_index(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileUnreadable("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return index_from_bytes(bytes);
}

}  // namespace meol::retrieval

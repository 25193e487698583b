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

#include <cstdint>
#include <string>
#include <string_view>

#include "meol/error.hpp"
#include "meol/svg/document.hpp"

namespace meol::svg {
namespace {

constexpr int kMaxDepth = 512;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ElementNode parse_document() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    ElementNode root = parse_element(0);
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw MalformedXml(std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_ws() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void skip_until(std::string_view terminator, const char* what) {
    auto end = src_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  void skip_doctype() {
    // <!DOCTYPE ... [ internal subset ] >
    pos_ += 9;
    int bracket = 0;
    while (!at_end()) {
      char c = peek();
      if (c == '[') ++bracket;
      else if (c == ']') --bracket;
      else if (c == '>' && bracket <= 0) {
        ++pos_;
        return;
      } else if (c == '"' || c == '\'') {
        auto end = src_.find(c, pos_ + 1);
        if (end == std::string_view::npos) fail("unterminated literal in DOCTYPE");
        pos_ = end;
      }
      ++pos_;
    }
    fail("unterminated DOCTYPE");
  }

  // Prolog/epilog: whitespace, comments, PIs, doctype.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    if (at_end() || !is_name_start(static_cast<unsigned char>(peek()))) fail("expected name");
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void decode_entity(std::string& out) {
    // at '&'
    auto semi = src_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("unterminated entity reference");
    auto name = src_.substr(pos_ + 1, semi - pos_ - 1);
    if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "amp") out += '&';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      auto digits = name.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity &" + std::string(name) + ";");
    }
    pos_ = semi + 1;
  }

  std::string parse_attr_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = peek();
    ++pos_;
    std::string out;
    while (!at_end() && peek() != quote) {
      char c = peek();
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        decode_entity(out);
      } else {
        out += c;
        ++pos_;
      }
    }
    if (at_end()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  ElementNode parse_element(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    ++pos_;  // '<'
    ElementNode node(parse_name());
    for (;;) {
      bool had_ws = !at_end() && is_space(peek());
      skip_ws();
      if (at_end()) fail("unterminated start tag <" + node.tag + ">");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      if (!had_ws) fail("expected whitespace before attribute");
      std::string name = parse_name();
      skip_ws();
      if (at_end() || peek() != '=') fail("expected '=' after attribute " + name);
      ++pos_;
      skip_ws();
      std::string value = parse_attr_value();
      if (node.has_attr(name)) fail("duplicate attribute " + name);
      node.attributes.push_back({std::move(name), std::move(value)});
    }
    parse_content(node, depth);
    return node;
  }

  void parse_content(ElementNode& node, int depth) {
    std::string text;
    for (;;) {
      if (at_end()) fail("missing end tag </" + node.tag + ">");
      char c = peek();
      if (c == '<') {
        if (starts_with("</")) {
          pos_ += 2;
          std::string name = parse_name();
          if (name != node.tag) fail("mismatched end tag </" + name + "> for <" + node.tag + ">");
          skip_ws();
          if (at_end() || peek() != '>') fail("expected '>'");
          ++pos_;
          break;
        }
        if (starts_with("<!--")) {
          skip_until("-->", "comment");
        } else if (starts_with("<![CDATA[")) {
          auto end = src_.find("]]>", pos_);
          if (end == std::string_view::npos) fail("unterminated CDATA");
          text.append(src_.substr(pos_ + 9, end - pos_ - 9));
          pos_ = end + 3;
        } else if (starts_with("<?")) {
          skip_until("?>", "processing instruction");
        } else {
          node.children.push_back(parse_element(depth + 1));
        }
      } else if (c == '&') {
        decode_entity(text);
      } else {
        text += c;
        ++pos_;
      }
    }
    for (char ch : text) {
      if (!is_space(ch)) {
        node.text = std::move(text);
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

SvgDocument parse_svg(std::string_view text) {
  Parser parser(text);
  ElementNode root = parser.parse_document();
  if (root.local_name() != "svg") throw NotAnSvg("root element is <" + root.tag + ">");
  check_unique_ids(root);
  return SvgDocument(std::move(root), std::string(text));
}

}  // namespace meol::svg

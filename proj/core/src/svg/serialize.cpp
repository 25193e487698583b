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

#include <string>

#include "meol/svg/document.hpp"

namespace meol::svg {
namespace {

void escape_attr(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

void escape_text(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

void write(std::string& out, const ElementNode& node) {
  out += '<';
  out += node.tag;
  for (const auto& a : node.attributes) {
    out += ' ';
    out += a.name;
    out += "=\"";
    escape_attr(out, a.value);
    out += '"';
  }
  if (node.children.empty() && node.text.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  escape_text(out, node.text);
  for (const auto& c : node.children) write(out, c);
  out += "</";
  out += node.tag;
  out += '>';
}

}  // namespace

std::string serialize_element(const ElementNode& node) {
  std::string out;
  write(out, node);
  return out;
}

std::string serialize_svg(const SvgDocument& doc) { return serialize_element(doc.root()); }

}  // namespace meol::svg

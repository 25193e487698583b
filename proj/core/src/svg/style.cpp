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

#include "style.hpp"

#include <cmath>
#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace meol::svg::detail {
namespace {

struct NamedColor {
  std::string_view name;
  std::uint32_t rgb;
};

// CSS Color Module Level 3 extended keywords, sorted.
constexpr std::array kNamedColors = std::to_array<NamedColor>({
    {"aliceblue", 0xf0f8ff},
    {"antiquewhite", 0xfaebd7},
    {"aqua", 0x00ffff},
    {"aquamarine", 0x7fffd4},
    {"azure", 0xf0ffff},
    {"beige", 0xf5f5dc},
    {"bisque", 0xffe4c4},
    {"black", 0x000000},
    {"blanchedalmond", 0xffebcd},
    {"blue", 0x0000ff},
    {"blueviolet", 0x8a2be2},
    {"brown", 0xa52a2a},
    {"burlywood", 0xdeb887},
    {"cadetblue", 0x5f9ea0},
    {"chartreuse", 0x7fff00},
    {"chocolate", 0xd2691e},
    {"coral", 0xff7f50},
    {"cornflowerblue", 0x6495ed},
    {"cornsilk", 0xfff8dc},
    {"crimson", 0xdc143c},
    {"cyan", 0x00ffff},
    {"darkblue", 0x00008b},
    {"darkcyan", 0x008b8b},
    {"darkgoldenrod", 0xb8860b},
    {"darkgray", 0xa9a9a9},
    {"darkgreen", 0x006400},
    {"darkgrey", 0xa9a9a9},
    {"darkkhaki", 0xbdb76b},
    {"darkmagenta", 0x8b008b},
    {"darkolivegreen", 0x556b2f},
    {"darkorange", 0xff8c00},
    {"darkorchid", 0x9932cc},
    {"darkred", 0x8b0000},
    {"darksalmon", 0xe9967a},
    {"darkseagreen", 0x8fbc8f},
    {"darkslateblue", 0x483d8b},
    {"darkslategray", 0x2f4f4f},
    {"darkslategrey", 0x2f4f4f},
    {"darkturquoise", 0x00ced1},
    {"darkviolet", 0x9400d3},
    {"deeppink", 0xff1493},
    {"deepskyblue", 0x00bfff},
    {"dimgray", 0x696969},
    {"dimgrey", 0x696969},
    {"dodgerblue", 0x1e90ff},
    {"firebrick", 0xb22222},
    {"floralwhite", 0xfffaf0},
    {"forestgreen", 0x228b22},
    {"fuchsia", 0xff00ff},
    {"gainsboro", 0xdcdcdc},
    {"ghostwhite", 0xf8f8ff},
    {"gold", 0xffd700},
    {"goldenrod", 0xdaa520},
    {"gray", 0x808080},
    {"green", 0x008000},
    {"greenyellow", 0xadff2f},
    {"grey", 0x808080},
    {"honeydew", 0xf0fff0},
    {"hotpink", 0xff69b4},
    {"indianred", 0xcd5c5c},
    {"indigo", 0x4b0082},
    {"ivory", 0xfffff0},
    {"khaki", 0xf0e68c},
    {"lavender", 0xe6e6fa},
    {"lavenderblush", 0xfff0f5},
    {"lawngreen", 0x7cfc00},
    {"lemonchiffon", 0xfffacd},
    {"lightblue", 0xadd8e6},
    {"lightcoral", 0xf08080},
    {"lightcyan", 0xe0ffff},
    {"lightgoldenrodyellow", 0xfafad2},
    {"lightgray", 0xd3d3d3},
    {"lightgreen", 0x90ee90},
    {"lightgrey", 0xd3d3d3},
    {"lightpink", 0xffb6c1},
    {"lightsalmon", 0xffa07a},
    {"lightseagreen", 0x20b2aa},
    {"lightskyblue", 0x87cefa},
    {"lightslategray", 0x778899},
    {"lightslategrey", 0x778899},
    {"lightsteelblue", 0xb0c4de},
    {"lightyellow", 0xffffe0},
    {"lime", 0x00ff00},
    {"limegreen", 0x32cd32},
    {"linen", 0xfaf0e6},
    {"magenta", 0xff00ff},
    {"maroon", 0x800000},
    {"mediumaquamarine", 0x66cdaa},
    {"mediumblue", 0x0000cd},
    {"mediumorchid", 0xba55d3},
    {"mediumpurple", 0x9370db},
    {"mediumseagreen", 0x3cb371},
    {"mediumslateblue", 0x7b68ee},
    {"mediumspringgreen", 0x00fa9a},
    {"mediumturquoise", 0x48d1cc},
    {"mediumvioletred", 0xc71585},
    {"midnightblue", 0x191970},
    {"mintcream", 0xf5fffa},
    {"mistyrose", 0xffe4e1},
    {"moccasin", 0xffe4b5},
    {"navajowhite", 0xffdead},
    {"navy", 0x000080},
    {"oldlace", 0xfdf5e6},
    {"olive", 0x808000},
    {"olivedrab", 0x6b8e23},
    {"orange", 0xffa500},
    {"orangered", 0xff4500},
    {"orchid", 0xda70d6},
    {"palegoldenrod", 0xeee8aa},
    {"palegreen", 0x98fb98},
    {"paleturquoise", 0xafeeee},
    {"palevioletred", 0xdb7093},
    {"papayawhip", 0xffefd5},
    {"peachpuff", 0xffdab9},
    {"peru", 0xcd853f},
    {"pink", 0xffc0cb},
    {"plum", 0xdda0dd},
    {"powderblue", 0xb0e0e6},
    {"purple", 0x800080},
    {"rebeccapurple", 0x663399},
    {"red", 0xff0000},
    {"rosybrown", 0xbc8f8f},
    {"royalblue", 0x4169e1},
    {"saddlebrown", 0x8b4513},
    {"salmon", 0xfa8072},
    {"sandybrown", 0xf4a460},
    {"seagreen", 0x2e8b57},
    {"seashell", 0xfff5ee},
    {"sienna", 0xa0522d},
    {"silver", 0xc0c0c0},
    {"skyblue", 0x87ceeb},
    {"slateblue", 0x6a5acd},
    {"slategray", 0x708090},
    {"slategrey", 0x708090},
    {"snow", 0xfffafa},
    {"springgreen", 0x00ff7f},
    {"steelblue", 0x4682b4},
    {"tan", 0xd2b48c},
    {"teal", 0x008080},
    {"thistle", 0xd8bfd8},
    {"tomato", 0xff6347},
    {"turquoise", 0x40e0d0},
    {"violet", 0xee82ee},
    {"wheat", 0xf5deb3},
    {"white", 0xffffff},
    {"whitesmoke", 0xf5f5f5},
    {"yellow", 0xffff00},
    {"yellowgreen", 0x9acd32},
});

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Color from_rgb(std::uint32_t rgb) {
  return {((rgb >> 16) & 0xff) / 255.0, ((rgb >> 8) & 0xff) / 255.0, (rgb & 0xff) / 255.0, 1.0};
}

std::optional<double> parse_channel(std::string_view t, double scale) {
  t = trim(t);
  if (t.empty()) return std::nullopt;
  bool pct = t.back() == '%';
  if (pct) t.remove_suffix(1);
  std::string tmp(t);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || *end != '\0') return std::nullopt;
  v = pct ? v / 100.0 : v / scale;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Color> parse_color(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text[0] == '#') {
    auto hex = text.substr(1);
    for (char c : hex)
      if (hex_digit(c) < 0) return std::nullopt;
    if (hex.size() == 3 || hex.size() == 4) {
      Color c{hex_digit(hex[0]) * 17 / 255.0, hex_digit(hex[1]) * 17 / 255.0,
              hex_digit(hex[2]) * 17 / 255.0, 1.0};
      if (hex.size() == 4) c.a = hex_digit(hex[3]) * 17 / 255.0;
      return c;
    }
    if (hex.size() == 6 || hex.size() == 8) {
      auto byte = [&](std::size_t i) { return (hex_digit(hex[i]) * 16 + hex_digit(hex[i + 1])) / 255.0; };
      Color c{byte(0), byte(2), byte(4), 1.0};
      if (hex.size() == 8) c.a = byte(6);
      return c;
    }
    return std::nullopt;
  }
  std::string low = lower(text);
  if (low.rfind("rgb(", 0) == 0 || low.rfind("rgba(", 0) == 0) {
    auto open = low.find('(');
    auto close = low.rfind(')');
    if (close == std::string::npos || close < open) return std::nullopt;
    std::string_view inner(low.data() + open + 1, close - open - 1);
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      auto comma = inner.find_first_of(",/", pos);
      if (comma == std::string_view::npos) comma = inner.size();
      parts.push_back(inner.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (parts.size() == 1) {
      // space-separated syntax: rgb(255 0 0)
      parts.clear();
      std::size_t i = 0;
      while (i < inner.size()) {
        while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
        std::size_t j = i;
        while (j < inner.size() && !std::isspace(static_cast<unsigned char>(inner[j]))) ++j;
        if (j > i) parts.push_back(inner.substr(i, j - i));
        i = j;
      }
    }
    if (parts.size() != 3 && parts.size() != 4) return std::nullopt;
    auto r = parse_channel(parts[0], 255.0);
    auto g = parse_channel(parts[1], 255.0);
    auto b = parse_channel(parts[2], 255.0);
    if (!r || !g || !b) return std::nullopt;
    Color c{*r, *g, *b, 1.0};
    if (parts.size() == 4) {
      auto a = parse_channel(parts[3], 1.0);
      if (!a) return std::nullopt;
      c.a = *a;
    }
    return c;
  }
  if (low == "transparent") return Color{0, 0, 0, 0};
  auto it = std::lower_bound(kNamedColors.begin(), kNamedColors.end(), low,
                             [](const NamedColor& nc, const std::string& key) { return nc.name < key; });
  if (it != kNamedColors.end() && it->name == low) return from_rgb(it->rgb);
  return std::nullopt;
}

std::optional<std::string> url_reference(std::string_view value) {
  value = trim(value);
  if (value.substr(0, 4) != "url(") return std::nullopt;
  auto close = value.find(')');
  if (close == std::string_view::npos) return std::nullopt;
  auto inner = trim(value.substr(4, close - 4));
  if (!inner.empty() && (inner.front() == '\'' || inner.front() == '"')) {
    if (inner.size() < 2 || inner.back() != inner.front()) return std::nullopt;
    inner = inner.substr(1, inner.size() - 2);
  }
  if (inner.empty() || inner[0] != '#') return std::nullopt;
  return std::string(inner.substr(1));
}

std::optional<Paint> parse_paint(std::string_view text) {
  text = trim(text);
  Paint p;
  if (text == "none") {
    p.kind = Paint::Kind::None;
    return p;
  }
  if (text == "currentColor" || text == "currentcolor") {
    p.kind = Paint::Kind::CurrentColor;
    return p;
  }
  if (text.substr(0, 4) == "url(") {
    auto id = url_reference(text);
    if (!id) return std::nullopt;
    p.kind = Paint::Kind::Server;
    p.server_id = *id;
    auto rest = trim(text.substr(text.find(')') + 1));
    if (rest == "none") {
      p.fallback_none = true;
    } else if (!rest.empty()) {
      p.fallback = parse_color(rest);
    }
    return p;
  }
  auto c = parse_color(text);
  if (!c) return std::nullopt;
  p.kind = Paint::Kind::Solid;
  p.color = *c;
  return p;
}

std::optional<double> parse_length(std::string_view text, double percent_base) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::string tmp(text);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str() || !std::isfinite(v)) return std::nullopt;
  std::string_view unit = trim(std::string_view(end));
  if (unit.empty() || unit == "px") return v;
  if (unit == "%") return v / 100.0 * percent_base;
  if (unit == "pt") return v * 4.0 / 3.0;
  if (unit == "pc") return v * 16.0;
  if (unit == "mm") return v * 96.0 / 25.4;
  if (unit == "cm") return v * 96.0 / 2.54;
  if (unit == "in") return v * 96.0;
  if (unit == "em") return v * 16.0;
  if (unit == "ex") return v * 8.0;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> parse_style_declarations(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto semi = text.find(';', pos);
    if (semi == std::string_view::npos) semi = text.size();
    auto decl = text.substr(pos, semi - pos);
    auto colon = decl.find(':');
    if (colon != std::string_view::npos) {
      auto name = trim(decl.substr(0, colon));
      auto value = trim(decl.substr(colon + 1));
      if (auto bang = value.find("!important"); bang != std::string_view::npos)
        value = trim(value.substr(0, bang));
      if (!name.empty()) out.emplace_back(lower(name), std::string(value));
    }
    pos = semi + 1;
  }
  return out;
}

}  // namespace meol::svg::detail

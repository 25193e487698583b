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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meol::svg::detail {

/// Straight (non-premultiplied) RGBA in [0,1].
struct Color {
  double r = 0, g = 0, b = 0, a = 1;
};

std::optional<Color> parse_color(std::string_view text);

struct Paint {
  enum class Kind { None, Solid, CurrentColor, Server };
  Kind kind = Kind::None;
  Color color{};
  std::string server_id;                  // for Server
  std::optional<Color> fallback;          // "url(#g) red"
  bool fallback_none = false;             // "url(#g) none"
};

std::optional<Paint> parse_paint(std::string_view text);

/// Length in user units. Percentages resolve against `percent_base`.
std::optional<double> parse_length(std::string_view text, double percent_base);

/// "fill: red; stroke:blue" -> {{"fill","red"},{"stroke","blue"}}
std::vector<std::pair<std::string, std::string>> parse_style_declarations(std::string_view text);

std::string_view trim(std::string_view s);

/// Extracts the id from "url(#id)" / "url('#id')"; nullopt otherwise.
std::optional<std::string> url_reference(std::string_view value);

}  // namespace meol::svg::detail

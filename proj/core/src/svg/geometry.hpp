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
#include <string_view>
#include <vector>

namespace meol::svg::detail {

struct Point {
  double x = 0;
  double y = 0;
};

/// 2-D affine map  [a c e; b d f; 0 0 1]  (SVG matrix order).
struct Affine {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  Point apply(Point p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
  /// this * rhs: rhs is applied first.
  Affine operator*(const Affine& rhs) const;
  bool is_identity() const {
    return a == 1 && b == 0 && c == 0 && d == 1 && e == 0 && f == 0;
  }
  /// Largest singular value; the device-space stretch of a unit vector.
  double max_scale() const;
  std::optional<Affine> inverse() const;

  static Affine translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
  static Affine scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
  static Affine rotate_deg(double deg);
};

/// Parses an SVG transform list. nullopt on syntax error.
std::optional<Affine> parse_transform(std::string_view text);

/// Parses whitespace/comma separated numbers; stops at the first bad token.
std::vector<double> parse_number_list(std::string_view text);

/// Absolute path segments. Quadratics and arcs are converted to cubics.
struct PathSeg {
  enum class Kind { Move, Line, Cubic, Close };
  Kind kind;
  Point p1{}, p2{}, p3{};  // Move/Line: p1; Cubic: p1,p2 controls, p3 end
};
using PathData = std::vector<PathSeg>;

/// Parses path data, rendering up to the first error as SVG requires.
PathData parse_path_data(std::string_view d);

PathData rect_path(double x, double y, double w, double h, double rx, double ry);
PathData ellipse_path(double cx, double cy, double rx, double ry);

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
};

/// Flattens curves so that the chord error stays below `tolerance` (same
/// units as the path).
std::vector<Polyline> flatten(const PathData& path, double tolerance);

}  // namespace meol::svg::detail

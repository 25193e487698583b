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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "geometry.hpp"
#include "meol/error.hpp"
#include "meol/svg/raster.hpp"
#include "style.hpp"

namespace meol::svg {

using detail::Affine;
using detail::Color;
using detail::Paint;
using detail::PathData;
using detail::Point;
using detail::Polyline;

RasterImage RasterImage::blank(int width, int height) {
  RasterImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 4, 0);
  return img;
}

std::array<std::uint8_t, 4> RasterImage::at(int x, int y) const {
  auto i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 4;
  return {pixels[i], pixels[i + 1], pixels[i + 2], pixels[i + 3]};
}

double visual_distance(const RasterImage& a, const RasterImage& b) {
  if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size()) {
    throw DimensionMismatch(std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                            std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  if (a.pixels.empty()) return 0.0;
  double sum = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.pixels.size()));
}

namespace {

// Vertical sub-scanlines per pixel row; horizontal coverage is exact.
constexpr int kSubsamples = 16;
// Flattening tolerance in device pixels.
constexpr double kDeviceTolerance = 0.2;
constexpr int kMaxUseDepth = 32;

enum class FillRule { NonZero, EvenOdd };
enum class LineCap { Butt, Round, Square };
enum class LineJoin { Miter, Round, Bevel };

struct Style {
  Paint fill = [] {
    Paint p;
    p.kind = Paint::Kind::Solid;
    return p;
  }();
  double fill_opacity = 1;
  FillRule fill_rule = FillRule::NonZero;
  Paint stroke;
  double stroke_width = 1;
  double stroke_opacity = 1;
  LineCap cap = LineCap::Butt;
  LineJoin join = LineJoin::Miter;
  double miter_limit = 4;
  std::vector<double> dash;
  double dash_offset = 0;
  Color color{0, 0, 0, 1};
  bool visible = true;
};

class Props {
 public:
  explicit Props(const ElementNode& node) : node_(node) {
    if (const auto* s = node.attr("style")) decls_ = detail::parse_style_declarations(*s);
  }
  std::optional<std::string_view> get(std::string_view name) const {
    for (auto it = decls_.rbegin(); it != decls_.rend(); ++it)
      if (it->first == name) return std::string_view(it->second);
    if (const auto* v = node_.attr(name)) return std::string_view(*v);
    return std::nullopt;
  }

 private:
  const ElementNode& node_;
  std::vector<std::pair<std::string, std::string>> decls_;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::optional<double> parse_number(std::string_view s) {
  auto v = detail::parse_number_list(s);
  if (v.size() != 1) return std::nullopt;
  return v[0];
}

double parse_opacity(std::optional<std::string_view> v, double fallback) {
  if (!v) return fallback;
  auto t = detail::trim(*v);
  if (!t.empty() && t.back() == '%') {
    auto n = parse_number(t.substr(0, t.size() - 1));
    return n ? clamp01(*n / 100.0) : fallback;
  }
  auto n = parse_number(t);
  return n ? clamp01(*n) : fallback;
}

struct Layer {
  Layer(int w, int h) : width(w), height(h), px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 4, 0.f) {}
  int width;
  int height;
  std::vector<float> px;  // premultiplied RGBA
};

struct Edge {
  double x0, y0, x1, y1, slope;
  int dir;
};

class Coverage {
 public:
  Coverage(int w, int h) : w_(w), h_(h), cov_(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.f), row_(static_cast<std::size_t>(w) + 1, 0.0) {}

  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // touched bounds, half-open

  float at(int x, int y) const { return cov_[static_cast<std::size_t>(y) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(x)]; }

  void reset() {
    for (int y = y0; y < y1; ++y)
      std::fill_n(cov_.begin() + static_cast<std::ptrdiff_t>(y) * w_ + x0, x1 - x0, 0.f);
    x0 = y0 = x1 = y1 = 0;
  }

  bool empty() const { return x1 <= x0 || y1 <= y0; }

  void fill(const std::vector<std::vector<Point>>& polygons, FillRule rule) {
    std::vector<Edge> edges;
    double ymin = INFINITY, ymax = -INFINITY;
    for (const auto& poly : polygons) {
      std::size_t n = poly.size();
      if (n < 2) continue;
      for (std::size_t i = 0; i < n; ++i) {
        Point a = poly[i], b = poly[(i + 1) % n];
        if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y)) continue;
        if (a.y == b.y) continue;
        int dir = 1;
        if (a.y > b.y) {
          std::swap(a, b);
          dir = -1;
        }
        edges.push_back({a.x, a.y, b.x, b.y, (b.x - a.x) / (b.y - a.y), dir});
        ymin = std::min(ymin, a.y);
        ymax = std::max(ymax, b.y);
      }
    }
    if (edges.empty()) return;
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.y0 < b.y0; });
    int py0 = std::max(0, static_cast<int>(std::floor(ymin)));
    int py1 = std::min(h_, static_cast<int>(std::ceil(ymax)));
    if (py0 >= py1) return;

    std::vector<const Edge*> active;
    std::vector<std::pair<double, int>> crossings;
    std::size_t next = 0;
    const double weight = 1.0 / kSubsamples;
    for (int py = py0; py < py1; ++py) {
      int rx0 = w_, rx1 = 0;
      for (int s = 0; s < kSubsamples; ++s) {
        double y = py + (s + 0.5) / kSubsamples;
        while (next < edges.size() && edges[next].y0 <= y) active.push_back(&edges[next++]);
        std::erase_if(active, [y](const Edge* e) { return e->y1 <= y; });
        crossings.clear();
        for (const Edge* e : active)
          if (y >= e->y0 && y < e->y1) crossings.emplace_back(e->x0 + (y - e->y0) * e->slope, e->dir);
        if (crossings.empty()) continue;
        std::sort(crossings.begin(), crossings.end());
        int wind = 0;
        double xa = 0;
        for (const auto& [x, dir] : crossings) {
          bool was_in = inside(wind, rule);
          wind += dir;
          bool now_in = inside(wind, rule);
          if (!was_in && now_in) {
            xa = x;
          } else if (was_in && !now_in) {
            add_span(xa, x, weight, rx0, rx1);
          }
        }
      }
      if (rx0 < rx1) {
        float* out = cov_.data() + static_cast<std::size_t>(py) * static_cast<std::size_t>(w_);
        for (int x = rx0; x < rx1; ++x) {
          double v = std::min(1.0, static_cast<double>(out[x]) + row_[static_cast<std::size_t>(x)]);
          out[x] = static_cast<float>(v);
          row_[static_cast<std::size_t>(x)] = 0.0;
        }
        extend(rx0, py, rx1, py + 1);
      }
    }
  }

 private:
  static bool inside(int wind, FillRule rule) {
    return rule == FillRule::NonZero ? wind != 0 : (wind & 1) != 0;
  }

  void extend(int ax0, int ay0, int ax1, int ay1) {
    if (empty()) {
      x0 = ax0, y0 = ay0, x1 = ax1, y1 = ay1;
      return;
    }
    x0 = std::min(x0, ax0);
    y0 = std::min(y0, ay0);
    x1 = std::max(x1, ax1);
    y1 = std::max(y1, ay1);
  }

  void add_span(double xa, double xb, double w, int& rx0, int& rx1) {
    xa = std::clamp(xa, 0.0, static_cast<double>(w_));
    xb = std::clamp(xb, 0.0, static_cast<double>(w_));
    if (xb <= xa) return;
    int ia = static_cast<int>(std::floor(xa));
    int ib = static_cast<int>(std::floor(xb));
    rx0 = std::min(rx0, ia);
    if (ia == ib) {
      row_[static_cast<std::size_t>(ia)] += (xb - xa) * w;
      rx1 = std::max(rx1, ia + 1);
      return;
    }
    row_[static_cast<std::size_t>(ia)] += (ia + 1 - xa) * w;
    for (int i = ia + 1; i < ib; ++i) row_[static_cast<std::size_t>(i)] += w;
    if (ib < w_) {
      row_[static_cast<std::size_t>(ib)] += (xb - ib) * w;
      rx1 = std::max(rx1, ib + 1);
    } else {
      rx1 = std::max(rx1, ib);
    }
  }

  int w_, h_;
  std::vector<float> cov_;
  std::vector<double> row_;
};

// ---------------------------------------------------------------------------
// Paint servers

struct GradientStop {
  double offset;
  Color color;
};

struct PaintSource {
  enum class Kind { Solid, Linear, Radial } kind = Kind::Solid;
  Color color;
  std::vector<GradientStop> stops;
  Affine device_to_gradient;
  enum class Spread { Pad, Reflect, Repeat } spread = Spread::Pad;
  double x1 = 0, y1 = 0, x2 = 1, y2 = 0;
  double cx = 0.5, cy = 0.5, r = 0.5, fx = 0.5, fy = 0.5;

  Color sample(double dx, double dy) const {
    if (kind == Kind::Solid) return color;
    Point p = device_to_gradient.apply({dx, dy});
    double t;
    if (kind == Kind::Linear) {
      double vx = x2 - x1, vy = y2 - y1;
      double len2 = vx * vx + vy * vy;
      t = len2 == 0 ? 1.0 : ((p.x - x1) * vx + (p.y - y1) * vy) / len2;
    } else {
      double ddx = cx - fx, ddy = cy - fy;
      double qx = p.x - fx, qy = p.y - fy;
      double a = ddx * ddx + ddy * ddy - r * r;
      double b = -2 * (qx * ddx + qy * ddy);
      double c = qx * qx + qy * qy;
      if (a == 0) {
        t = b == 0 ? 0 : -c / b;
      } else {
        double disc = std::max(0.0, b * b - 4 * a * c);
        t = (-b - std::sqrt(disc)) / (2 * a);
      }
    }
    switch (spread) {
      case Spread::Pad: t = clamp01(t); break;
      case Spread::Repeat: t = t - std::floor(t); break;
      case Spread::Reflect: {
        t = std::fabs(t);
        t = std::fmod(t, 2.0);
        if (t > 1) t = 2 - t;
        break;
      }
    }
    if (t <= stops.front().offset) return stops.front().color;
    if (t >= stops.back().offset) return stops.back().color;
    for (std::size_t i = 1; i < stops.size(); ++i) {
      if (t < stops[i].offset) {
        const auto& s0 = stops[i - 1];
        const auto& s1 = stops[i];
        double span = s1.offset - s0.offset;
        double u = span <= 0 ? 1.0 : (t - s0.offset) / span;
        return {s0.color.r + (s1.color.r - s0.color.r) * u, s0.color.g + (s1.color.g - s0.color.g) * u,
                s0.color.b + (s1.color.b - s0.color.b) * u, s0.color.a + (s1.color.a - s0.color.a) * u};
      }
    }
    return stops.back().color;
  }
};

struct BBox {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  void add(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

// ---------------------------------------------------------------------------
// Stroking

double signed_area(const std::vector<Point>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a / 2;
}

void push_oriented(std::vector<std::vector<Point>>& out, std::vector<Point> poly) {
  if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
  out.push_back(std::move(poly));
}

std::vector<Point> circle_polygon(Point c, double radius, double tol) {
  int n = 8;
  if (tol < radius) {
    double step = 2 * std::acos(1 - tol / radius);
    n = std::clamp(static_cast<int>(std::ceil(2 * std::numbers::pi / step)), 8, 256);
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double a = 2 * std::numbers::pi * i / n;
    pts.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
  }
  return pts;
}

std::vector<Polyline> apply_dashes(const std::vector<Polyline>& lines, std::vector<double> dash, double offset) {
  if (dash.empty()) return lines;
  double total = 0;
  for (double d : dash) {
    if (d < 0) return lines;
    total += d;
  }
  if (total <= 0) return lines;
  if (dash.size() % 2 == 1) {
    auto copy = dash;
    dash.insert(dash.end(), copy.begin(), copy.end());
    total *= 2;
  }
  std::vector<Polyline> out;
  for (const auto& line : lines) {
    std::vector<Point> pts = line.points;
    if (line.closed && !pts.empty()) pts.push_back(pts.front());
    if (pts.size() < 2) continue;
    double phase = std::fmod(offset, total);
    if (phase < 0) phase += total;
    std::size_t idx = 0;
    while (phase >= dash[idx]) {
      phase -= dash[idx];
      idx = (idx + 1) % dash.size();
    }
    double remaining = dash[idx] - phase;
    bool on = idx % 2 == 0;
    Polyline current;
    if (on) current.points.push_back(pts[0]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Point a = pts[i], b = pts[i + 1];
      double seg = std::hypot(b.x - a.x, b.y - a.y);
      double pos = 0;
      while (seg - pos > remaining) {
        pos += remaining;
        double t = pos / seg;
        Point p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
        if (on) {
          current.points.push_back(p);
          out.push_back(std::move(current));
          current = {};
        } else {
          current.points.push_back(p);
        }
        on = !on;
        idx = (idx + 1) % dash.size();
        remaining = dash[idx];
        if (remaining <= 0 && dash[(idx + 1) % dash.size()] <= 0) break;
      }
      remaining -= seg - pos;
      if (on) current.points.push_back(b);
    }
    if (on && current.points.size() >= 2) out.push_back(std::move(current));
  }
  return out;
}

struct StrokeParams {
  double half_width;
  LineCap cap;
  LineJoin join;
  double miter_limit;
  double tolerance;
};

void add_cap(std::vector<std::vector<Point>>& out, Point p, Point u, const StrokeParams& sp) {
  double hw = sp.half_width;
  if (sp.cap == LineCap::Round) {
    push_oriented(out, circle_polygon(p, hw, sp.tolerance));
  } else if (sp.cap == LineCap::Square) {
    Point n{-u.y * hw, u.x * hw};
    Point e{u.x * hw, u.y * hw};
    push_oriented(out, {{p.x + n.x, p.y + n.y},
                        {p.x + n.x + e.x, p.y + n.y + e.y},
                        {p.x - n.x + e.x, p.y - n.y + e.y},
                        {p.x - n.x, p.y - n.y}});
  }
}

void add_join(std::vector<std::vector<Point>>& out, Point p, Point u1, Point u2, const StrokeParams& sp) {
  double cross = u1.x * u2.y - u1.y * u2.x;
  double dot = u1.x * u2.x + u1.y * u2.y;
  if (std::fabs(cross) < 1e-12 && dot > 0) return;
  double hw = sp.half_width;
  if (sp.join == LineJoin::Round) {
    push_oriented(out, circle_polygon(p, hw, sp.tolerance));
    return;
  }
  if (std::fabs(cross) < 1e-12) return;
  double s = cross > 0 ? -1.0 : 1.0;
  Point n1{-u1.y * hw * s, u1.x * hw * s};
  Point n2{-u2.y * hw * s, u2.x * hw * s};
  Point a{p.x + n1.x, p.y + n1.y};
  Point b{p.x + n2.x, p.y + n2.y};
  if (sp.join == LineJoin::Miter) {
    double sin_half = std::sqrt(std::max(0.0, (1 + dot) / 2));
    if (sin_half > 0 && 1.0 / sin_half <= sp.miter_limit) {
      double bx = n1.x + n2.x, by = n1.y + n2.y;
      double bl = std::hypot(bx, by);
      if (bl > 0) {
        double len = hw / sin_half;
        Point tip{p.x + bx / bl * len, p.y + by / bl * len};
        push_oriented(out, {p, a, tip, b});
        return;
      }
    }
  }
  push_oriented(out, {p, a, b});
}

std::vector<std::vector<Point>> stroke_outline(const std::vector<Polyline>& lines, const StrokeParams& sp) {
  std::vector<std::vector<Point>> out;
  double hw = sp.half_width;
  for (const auto& line : lines) {
    std::vector<Point> pts;
    for (const auto& p : line.points)
      if (pts.empty() || p.x != pts.back().x || p.y != pts.back().y) pts.push_back(p);
    bool closed = line.closed;
    if (closed && pts.size() > 1 && pts.front().x == pts.back().x && pts.front().y == pts.back().y) pts.pop_back();
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      if (sp.cap == LineCap::Round) push_oriented(out, circle_polygon(pts[0], hw, sp.tolerance));
      else if (sp.cap == LineCap::Square)
        push_oriented(out, {{pts[0].x - hw, pts[0].y - hw}, {pts[0].x + hw, pts[0].y - hw},
                            {pts[0].x + hw, pts[0].y + hw}, {pts[0].x - hw, pts[0].y + hw}});
      continue;
    }
    std::size_t n = pts.size();
    std::size_t nseg = closed ? n : n - 1;
    std::vector<Point> dirs(nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
      Point a = pts[i], b = pts[(i + 1) % n];
      double len = std::hypot(b.x - a.x, b.y - a.y);
      Point u{(b.x - a.x) / len, (b.y - a.y) / len};
      dirs[i] = u;
      Point nn{-u.y * hw, u.x * hw};
      push_oriented(out, {{a.x + nn.x, a.y + nn.y}, {b.x + nn.x, b.y + nn.y}, {b.x - nn.x, b.y - nn.y}, {a.x - nn.x, a.y - nn.y}});
    }
    if (closed) {
      for (std::size_t i = 0; i < n; ++i) add_join(out, pts[i], dirs[(i + nseg - 1) % nseg], dirs[i], sp);
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) add_join(out, pts[i], dirs[i - 1], dirs[i], sp);
      add_cap(out, pts[0], {-dirs[0].x, -dirs[0].y}, sp);
      add_cap(out, pts[n - 1], dirs[nseg - 1], sp);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_one_of(std::string_view name, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

class Renderer {
 public:
  Renderer(const SvgDocument& doc, int w, int h, const RenderOptions& opt)
      : doc_(doc), w_(w), h_(h), opt_(opt), coverage_(w, h) {
    walk(doc.root(), [this](const ElementNode& n, const NodePath& p) {
      if (const auto* id = n.attr("id")) ids_.emplace(*id, std::make_pair(&n, p));
    });
  }

  RasterImage run() {
    Layer canvas(w_, h_);
    const ElementNode& root = doc_.root();
    Affine view = viewport_transform(root);
    NodePath path;
    Style base;
    render_node(root, path, view, base, canvas, true);
    return to_image(canvas);
  }

 private:
  [[nodiscard]] bool unsupported(const ElementNode& n, const NodePath& path, std::string_view why) const {
    if (opt_.strict)
      throw RenderUnsupported("<" + n.tag + "> at [" + path_to_string(path) + "]: " + std::string(why));
    return false;
  }

  Affine viewport_transform(const ElementNode& root) {
    double vx = 0, vy = 0, vw = w_, vh = h_;
    bool have_box = false;
    if (const auto* vb = root.attr("viewBox")) {
      auto nums = detail::parse_number_list(*vb);
      if (nums.size() == 4 && nums[2] > 0 && nums[3] > 0) {
        vx = nums[0], vy = nums[1], vw = nums[2], vh = nums[3];
        have_box = true;
      }
    }
    if (!have_box) {
      const auto* wa = root.attr("width");
      const auto* ha = root.attr("height");
      std::optional<double> wv, hv;
      if (wa && wa->find('%') == std::string::npos) wv = detail::parse_length(*wa, 0);
      if (ha && ha->find('%') == std::string::npos) hv = detail::parse_length(*ha, 0);
      if (wv && hv && *wv > 0 && *hv > 0) {
        vw = *wv, vh = *hv;
        have_box = true;
      }
    }
    view_w_ = vw;
    view_h_ = vh;
    if (!have_box) return {};
    std::string par = root.attr("preserveAspectRatio") ? *root.attr("preserveAspectRatio") : "xMidYMid meet";
    std::string align = "xMidYMid";
    bool slice = false;
    {
      std::size_t pos = 0;
      std::vector<std::string> words;
      while (pos < par.size()) {
        while (pos < par.size() && std::isspace(static_cast<unsigned char>(par[pos]))) ++pos;
        std::size_t end = pos;
        while (end < par.size() && !std::isspace(static_cast<unsigned char>(par[end]))) ++end;
        if (end > pos) words.push_back(par.substr(pos, end - pos));
        pos = end;
      }
      if (!words.empty() && words[0] == "defer") words.erase(words.begin());
      if (!words.empty()) align = words[0];
      if (words.size() > 1) slice = words[1] == "slice";
    }
    double sx = w_ / vw, sy = h_ / vh;
    if (align == "none") return Affine{sx, 0, 0, sy, -vx * sx, -vy * sy};
    double s = slice ? std::max(sx, sy) : std::min(sx, sy);
    double tx = -vx * s, ty = -vy * s;
    double extra_x = w_ - vw * s, extra_y = h_ - vh * s;
    if (align.find("xMid") != std::string::npos) tx += extra_x / 2;
    else if (align.find("xMax") != std::string::npos) tx += extra_x;
    if (align.find("YMid") != std::string::npos) ty += extra_y / 2;
    else if (align.find("YMax") != std::string::npos) ty += extra_y;
    return Affine{s, 0, 0, s, tx, ty};
  }

  Style resolve_style(const Props& props, const Style& parent) const {
    Style st = parent;
    auto get = [&](std::string_view name) -> std::optional<std::string_view> {
      auto v = props.get(name);
      if (v && detail::trim(*v) == "inherit") return std::nullopt;
      return v;
    };
    if (auto v = get("color")) {
      if (auto c = detail::parse_color(*v)) st.color = *c;
    }
    if (auto v = get("fill")) {
      if (auto p = detail::parse_paint(*v)) st.fill = *p;
    }
    if (auto v = get("stroke")) {
      if (auto p = detail::parse_paint(*v)) st.stroke = *p;
    }
    st.fill_opacity = parse_opacity(get("fill-opacity"), st.fill_opacity);
    st.stroke_opacity = parse_opacity(get("stroke-opacity"), st.stroke_opacity);
    if (auto v = get("fill-rule")) {
      auto t = detail::trim(*v);
      if (t == "evenodd") st.fill_rule = FillRule::EvenOdd;
      else if (t == "nonzero") st.fill_rule = FillRule::NonZero;
    }
    if (auto v = get("stroke-width")) {
      if (auto l = detail::parse_length(*v, std::sqrt((view_w_ * view_w_ + view_h_ * view_h_) / 2)); l && *l >= 0)
        st.stroke_width = *l;
    }
    if (auto v = get("stroke-linecap")) {
      auto t = detail::trim(*v);
      if (t == "butt") st.cap = LineCap::Butt;
      else if (t == "round") st.cap = LineCap::Round;
      else if (t == "square") st.cap = LineCap::Square;
    }
    if (auto v = get("stroke-linejoin")) {
      auto t = detail::trim(*v);
      if (t == "miter" || t == "miter-clip" || t == "arcs") st.join = LineJoin::Miter;
      else if (t == "round") st.join = LineJoin::Round;
      else if (t == "bevel") st.join = LineJoin::Bevel;
    }
    if (auto v = get("stroke-miterlimit")) {
      if (auto n = parse_number(*v); n && *n >= 1) st.miter_limit = *n;
    }
    if (auto v = get("stroke-dasharray")) {
      auto t = detail::trim(*v);
      st.dash = t == "none" ? std::vector<double>{} : detail::parse_number_list(t);
    }
    if (auto v = get("stroke-dashoffset")) {
      if (auto n = detail::parse_length(*v, 0)) st.dash_offset = *n;
    }
    if (auto v = get("visibility")) {
      auto t = detail::trim(*v);
      st.visible = !(t == "hidden" || t == "collapse");
    }
    return st;
  }

  void render_node(const ElementNode& n, NodePath& path, const Affine& ctm, const Style& parent, Layer& dst,
                   bool is_root = false) {
    if (n.tag.find(':') != std::string::npos) return;  // foreign namespace (editor metadata)
    std::string_view name = n.tag;
    Props props(n);
    if (auto d = props.get("display"); d && detail::trim(*d) == "none") return;

    if (name == "style") {
      if (!n.text.empty() && !unsupported(n, path, "CSS style sheets")) return;
      return;
    }
    if (is_one_of(name, {"defs", "title", "desc", "metadata", "linearGradient", "radialGradient", "clipPath",
                         "mask", "marker", "pattern", "filter", "symbol", "script", "stop"}))
      return;
    if (is_one_of(name, {"text", "image", "foreignObject", "switch", "textPath", "tspan", "video", "audio",
                         "iframe", "canvas"}) ||
        (name == "svg" && !is_root)) {
      if (!unsupported(n, path, "element not supported by renderer")) return;
    }
    bool container = is_root || name == "g" || name == "a";
    bool shape = is_one_of(name, {"rect", "circle", "ellipse", "line", "polyline", "polygon", "path"});
    if (!container && !shape && name != "use") return;

    for (std::string_view attr_name : {"clip-path", "mask", "filter"}) {
      if (auto v = props.get(attr_name); v && detail::trim(*v) != "none") {
        if (!unsupported(n, path, std::string(attr_name) + " not supported")) {
          // lenient: render without the effect
        }
      }
    }
    if (shape) {
      for (std::string_view attr_name : {"marker-start", "marker-mid", "marker-end", "marker"}) {
        if (auto v = props.get(attr_name); v && detail::trim(*v) != "none") {
          if (!unsupported(n, path, "markers not supported")) {
          }
        }
      }
    }

    Affine m = ctm;
    if (const auto* t = n.attr("transform")) {
      if (auto parsed = detail::parse_transform(*t)) m = ctm * *parsed;
    }
    Style st = resolve_style(props, parent);
    double opacity = parse_opacity(props.get("opacity"), 1.0);
    if (opacity <= 0) return;

    std::optional<Layer> tmp;
    if (opacity < 1) tmp.emplace(w_, h_);
    Layer& target = tmp ? *tmp : dst;

    if (container) {
      render_children(n, path, m, st, target);
    } else if (name == "use") {
      render_use(n, path, m, st, target);
    } else {
      render_shape(n, path, props, m, st, target);
    }

    if (tmp) composite_layer(dst, *tmp, opacity);
  }

  void render_children(const ElementNode& n, NodePath& path, const Affine& m, const Style& st, Layer& dst) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(i);
      render_node(n.children[i], path, m, st, dst);
      path.pop_back();
    }
  }

  void render_use(const ElementNode& n, NodePath& path, const Affine& m, const Style& st, Layer& dst) {
    const std::string* href = n.attr("href");
    if (!href) href = n.attr("xlink:href");
    if (!href || href->empty() || (*href)[0] != '#') return;
    auto it = ids_.find(href->substr(1));
    if (it == ids_.end()) return;
    const ElementNode* target = it->second.first;
    if (std::find(use_stack_.begin(), use_stack_.end(), target) != use_stack_.end() ||
        use_stack_.size() >= kMaxUseDepth) {
      if (!unsupported(n, path, "recursive <use> reference")) return;
    }
    // A <use> pointing at one of its own ancestors is also a cycle.
    NodePath tpath = it->second.second;
    if (tpath.size() <= path.size() && std::equal(tpath.begin(), tpath.end(), path.begin())) {
      if (!unsupported(n, path, "recursive <use> reference")) return;
    }
    double x = 0, y = 0;
    if (const auto* v = n.attr("x")) x = detail::parse_length(*v, view_w_).value_or(0);
    if (const auto* v = n.attr("y")) y = detail::parse_length(*v, view_h_).value_or(0);
    Affine um = m * Affine::translate(x, y);
    use_stack_.push_back(target);
    if (target->tag == "symbol") {
      if (target->has_attr("viewBox")) {
        if (unsupported(*target, tpath, "<symbol> with viewBox")) {
        }
      } else {
        Props tprops(*target);
        Style tst = resolve_style(tprops, st);
        render_children(*target, tpath, um, tst, dst);
      }
    } else {
      render_node(*target, tpath, um, st, dst);
    }
    use_stack_.pop_back();
  }

  double length_attr(const ElementNode& n, std::string_view name, double base, double fallback = 0) const {
    const auto* v = n.attr(name);
    if (!v) return fallback;
    return detail::parse_length(*v, base).value_or(fallback);
  }

  void render_shape(const ElementNode& n, NodePath& path, const Props& props, const Affine& m, const Style& st,
                    Layer& dst) {
    (void)props;
    if (!st.visible) return;
    std::string_view name = n.tag;
    double diag = std::sqrt((view_w_ * view_w_ + view_h_ * view_h_) / 2);
    PathData geom;
    bool fillable = true;
    if (name == "rect") {
      double w = length_attr(n, "width", view_w_), h = length_attr(n, "height", view_h_);
      if (w <= 0 || h <= 0) return;
      double x = length_attr(n, "x", view_w_), y = length_attr(n, "y", view_h_);
      const auto* rxa = n.attr("rx");
      const auto* rya = n.attr("ry");
      double rx = rxa ? detail::parse_length(*rxa, view_w_).value_or(-1) : -1;
      double ry = rya ? detail::parse_length(*rya, view_h_).value_or(-1) : -1;
      if (rx < 0 && ry >= 0) rx = ry;
      if (ry < 0 && rx >= 0) ry = rx;
      geom = detail::rect_path(x, y, w, h, std::max(rx, 0.0), std::max(ry, 0.0));
    } else if (name == "circle") {
      double r = length_attr(n, "r", diag);
      if (r <= 0) return;
      geom = detail::ellipse_path(length_attr(n, "cx", view_w_), length_attr(n, "cy", view_h_), r, r);
    } else if (name == "ellipse") {
      double rx = length_attr(n, "rx", view_w_, -1), ry = length_attr(n, "ry", view_h_, -1);
      if (rx < 0 && ry > 0) rx = ry;
      if (ry < 0 && rx > 0) ry = rx;
      if (rx <= 0 || ry <= 0) return;
      geom = detail::ellipse_path(length_attr(n, "cx", view_w_), length_attr(n, "cy", view_h_), rx, ry);
    } else if (name == "line") {
      geom.push_back({detail::PathSeg::Kind::Move, {length_attr(n, "x1", view_w_), length_attr(n, "y1", view_h_)}});
      geom.push_back({detail::PathSeg::Kind::Line, {length_attr(n, "x2", view_w_), length_attr(n, "y2", view_h_)}});
      fillable = false;
    } else if (name == "polyline" || name == "polygon") {
      const auto* pts = n.attr("points");
      if (!pts) return;
      auto nums = detail::parse_number_list(*pts);
      if (nums.size() < 2) return;
      for (std::size_t i = 0; i + 1 < nums.size(); i += 2)
        geom.push_back({i == 0 ? detail::PathSeg::Kind::Move : detail::PathSeg::Kind::Line, {nums[i], nums[i + 1]}});
      if (name == "polygon") geom.push_back({detail::PathSeg::Kind::Close});
    } else {
      const auto* d = n.attr("d");
      if (!d) return;
      geom = detail::parse_path_data(*d);
    }
    if (geom.empty()) return;

    double scale = m.max_scale();
    if (!(scale > 0) || !std::isfinite(scale)) return;
    double tol = kDeviceTolerance / scale;
    auto lines = detail::flatten(geom, tol);
    BBox bbox;
    for (const auto& l : lines)
      for (const auto& p : l.points) bbox.add(p);

    if (fillable && st.fill.kind != Paint::Kind::None) {
      if (auto src = resolve_paint(st.fill, st, bbox, m, n, path)) {
        std::vector<std::vector<Point>> polys;
        for (const auto& l : lines) {
          std::vector<Point> dev;
          dev.reserve(l.points.size());
          for (const auto& p : l.points) dev.push_back(m.apply(p));
          polys.push_back(std::move(dev));
        }
        coverage_.fill(polys, st.fill_rule);
        composite_coverage(dst, *src, st.fill_opacity);
      }
    }
    if (st.stroke.kind != Paint::Kind::None && st.stroke_width > 0) {
      if (auto src = resolve_paint(st.stroke, st, bbox, m, n, path)) {
        auto dashed = apply_dashes(lines, st.dash, st.dash_offset);
        StrokeParams sp{st.stroke_width / 2, st.cap, st.join, st.miter_limit, tol};
        auto outline = stroke_outline(dashed, sp);
        for (auto& poly : outline)
          for (auto& p : poly) p = m.apply(p);
        coverage_.fill(outline, FillRule::NonZero);
        composite_coverage(dst, *src, st.stroke_opacity);
      }
    }
  }

  std::optional<PaintSource> resolve_paint(const Paint& paint, const Style& st, const BBox& bbox, const Affine& m,
                                           const ElementNode& n, const NodePath& path) {
    PaintSource src;
    switch (paint.kind) {
      case Paint::Kind::None:
        return std::nullopt;
      case Paint::Kind::Solid:
        src.color = paint.color;
        return src;
      case Paint::Kind::CurrentColor:
        src.color = st.color;
        return src;
      case Paint::Kind::Server:
        break;
    }
    auto fallback = [&]() -> std::optional<PaintSource> {
      if (paint.fallback) {
        src.color = *paint.fallback;
        return src;
      }
      return std::nullopt;
    };
    auto it = ids_.find(paint.server_id);
    if (it == ids_.end()) return fallback();
    const ElementNode& server = *it->second.first;
    if (server.tag == "pattern") {
      if (!unsupported(n, path, "pattern paint servers not supported")) return fallback();
    }
    if (server.tag != "linearGradient" && server.tag != "radialGradient") return fallback();
    return build_gradient(server, bbox, m);
  }

  std::optional<PaintSource> build_gradient(const ElementNode& server, const BBox& bbox, const Affine& m) const {
    std::vector<const ElementNode*> chain;
    const ElementNode* cur = &server;
    while (cur && chain.size() < 16) {
      if (std::find(chain.begin(), chain.end(), cur) != chain.end()) break;
      chain.push_back(cur);
      const std::string* href = cur->attr("href");
      if (!href) href = cur->attr("xlink:href");
      if (!href || href->empty() || (*href)[0] != '#') break;
      auto it = ids_.find(href->substr(1));
      if (it == ids_.end()) break;
      const ElementNode* nxt = it->second.first;
      if (nxt->tag != "linearGradient" && nxt->tag != "radialGradient") break;
      cur = nxt;
    }
    auto attr = [&](std::string_view name) -> const std::string* {
      for (const auto* g : chain)
        if (const auto* v = g->attr(name)) return v;
      return nullptr;
    };
    PaintSource src;
    for (const auto* g : chain) {
      bool any = false;
      for (const auto& child : g->children) {
        if (child.tag != "stop") continue;
        any = true;
        Props sp(child);
        double offset = 0;
        if (const auto* o = child.attr("offset")) {
          auto t = detail::trim(*o);
          bool pct = !t.empty() && t.back() == '%';
          if (pct) t.remove_suffix(1);
          auto v = parse_number(t);
          offset = v ? clamp01(pct ? *v / 100 : *v) : 0;
        }
        Color c{0, 0, 0, 1};
        if (auto sc = sp.get("stop-color")) {
          if (detail::trim(*sc) == "currentColor") c = Color{0, 0, 0, 1};
          else if (auto pc = detail::parse_color(*sc)) c = *pc;
        }
        c.a *= parse_opacity(sp.get("stop-opacity"), 1.0);
        if (!src.stops.empty()) offset = std::max(offset, src.stops.back().offset);
        src.stops.push_back({offset, c});
      }
      if (any) break;
    }
    if (src.stops.empty()) return std::nullopt;
    if (src.stops.size() == 1) {
      PaintSource solid;
      solid.color = src.stops[0].color;
      return solid;
    }
    bool bbox_units = true;
    if (const auto* u = attr("gradientUnits")) bbox_units = detail::trim(*u) != "userSpaceOnUse";
    Affine units;
    if (bbox_units) {
      if (!(bbox.width() > 0) || !(bbox.height() > 0)) return std::nullopt;
      units = Affine{bbox.width(), 0, 0, bbox.height(), bbox.x0, bbox.y0};
    }
    Affine gt;
    if (const auto* t = attr("gradientTransform")) {
      if (auto p = detail::parse_transform(*t)) gt = *p;
    }
    auto inv = (m * units * gt).inverse();
    if (!inv) return std::nullopt;
    src.device_to_gradient = *inv;
    if (const auto* s = attr("spreadMethod")) {
      if (*s == "reflect") src.spread = PaintSource::Spread::Reflect;
      else if (*s == "repeat") src.spread = PaintSource::Spread::Repeat;
    }
    double bw = bbox_units ? 1.0 : view_w_;
    double bh = bbox_units ? 1.0 : view_h_;
    double bd = bbox_units ? 1.0 : std::sqrt((view_w_ * view_w_ + view_h_ * view_h_) / 2);
    auto coord = [&](std::string_view name, double base, double def) {
      const auto* v = attr(name);
      if (!v) return def;
      auto t = detail::trim(*v);
      if (!t.empty() && t.back() == '%') {
        auto n = parse_number(t.substr(0, t.size() - 1));
        return n ? *n / 100.0 * base : def;
      }
      return detail::parse_length(t, base).value_or(def);
    };
    if (server.tag == "linearGradient") {
      src.kind = PaintSource::Kind::Linear;
      src.x1 = coord("x1", bw, 0);
      src.y1 = coord("y1", bh, 0);
      src.x2 = coord("x2", bw, bw);
      src.y2 = coord("y2", bh, 0);
    } else {
      src.kind = PaintSource::Kind::Radial;
      src.cx = coord("cx", bw, 0.5 * bw);
      src.cy = coord("cy", bh, 0.5 * bh);
      src.r = coord("r", bd, 0.5 * bd);
      src.fx = coord("fx", bw, src.cx);
      src.fy = coord("fy", bh, src.cy);
      if (!(src.r > 0)) {
        PaintSource solid;
        solid.color = src.stops.back().color;
        return solid;
      }
      double dx = src.fx - src.cx, dy = src.fy - src.cy;
      double dist = std::hypot(dx, dy);
      if (dist > 0.99 * src.r) {
        src.fx = src.cx + dx / dist * 0.99 * src.r;
        src.fy = src.cy + dy / dist * 0.99 * src.r;
      }
    }
    return src;
  }

  void composite_coverage(Layer& dst, const PaintSource& src, double opacity) {
    if (coverage_.empty()) {
      coverage_.reset();
      return;
    }
    for (int y = coverage_.y0; y < coverage_.y1; ++y) {
      for (int x = coverage_.x0; x < coverage_.x1; ++x) {
        float cov = coverage_.at(x, y);
        if (cov <= 0) continue;
        Color c = src.sample(x + 0.5, y + 0.5);
        double a = c.a * opacity * cov;
        if (a <= 0) continue;
        float* px = dst.px.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(x)) * 4;
        double keep = 1 - a;
        px[0] = static_cast<float>(c.r * a + px[0] * keep);
        px[1] = static_cast<float>(c.g * a + px[1] * keep);
        px[2] = static_cast<float>(c.b * a + px[2] * keep);
        px[3] = static_cast<float>(a + px[3] * keep);
      }
    }
    coverage_.reset();
  }

  static void composite_layer(Layer& dst, const Layer& src, double opacity) {
    for (std::size_t i = 0; i < dst.px.size(); i += 4) {
      double sa = src.px[i + 3] * opacity;
      if (sa <= 0) continue;
      double keep = 1 - sa;
      for (int c = 0; c < 3; ++c)
        dst.px[i + c] = static_cast<float>(src.px[i + c] * opacity + dst.px[i + c] * keep);
      dst.px[i + 3] = static_cast<float>(sa + dst.px[i + 3] * keep);
    }
  }

  RasterImage to_image(const Layer& layer) const {
    RasterImage img = RasterImage::blank(w_, h_);
    for (std::size_t i = 0; i < layer.px.size(); i += 4) {
      double a = std::clamp(static_cast<double>(layer.px[i + 3]), 0.0, 1.0);
      long a8 = std::lround(a * 255.0);
      if (a8 <= 0) continue;
      for (int c = 0; c < 3; ++c) {
        double v = std::clamp(static_cast<double>(layer.px[i + c]) / a, 0.0, 1.0);
        img.pixels[i + c] = static_cast<std::uint8_t>(std::lround(v * 255.0));
      }
      img.pixels[i + 3] = static_cast<std::uint8_t>(a8);
    }
    return img;
  }

  const SvgDocument& doc_;
  int w_, h_;
  RenderOptions opt_;
  double view_w_ = 0, view_h_ = 0;
  Coverage coverage_;
  std::unordered_map<std::string, std::pair<const ElementNode*, NodePath>> ids_;
  std::vector<const ElementNode*> use_stack_;
};

}  // namespace

RasterImage rasterize(const SvgDocument& doc, int width, int height, const RenderOptions& options) {
  if (width <= 0 || height <= 0)
    throw DimensionMismatch("raster size must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  Renderer r(doc, width, height, options);
  return r.run();
}

}  // namespace meol::svg

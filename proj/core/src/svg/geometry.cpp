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

#include "geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace meol::svg::detail {

Affine Affine::operator*(const Affine& r) const {
  return {a * r.a + c * r.b,     b * r.a + d * r.b,     a * r.c + c * r.d,
          b * r.c + d * r.d,     a * r.e + c * r.f + e, b * r.e + d * r.f + f};
}

double Affine::max_scale() const {
  // sqrt of the largest eigenvalue of M^T M
  double p = a * a + b * b;
  double q = a * c + b * d;
  double r = c * c + d * d;
  double tr = p + r;
  double det = p * r - q * q;
  double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  return std::sqrt(std::max(0.0, tr / 2 + disc));
}

std::optional<Affine> Affine::inverse() const {
  double det = a * d - b * c;
  if (det == 0 || !std::isfinite(det)) return std::nullopt;
  double inv = 1.0 / det;
  return Affine{d * inv, -b * inv, -c * inv, a * inv, (c * f - d * e) * inv, (b * e - a * f) * inv};
}

Affine Affine::rotate_deg(double deg) {
  double rad = deg * std::numbers::pi / 180.0;
  double cs = std::cos(rad), sn = std::sin(rad);
  return {cs, sn, -sn, cs, 0, 0};
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }
  void skip_ws_comma() {
    skip_ws();
    if (!at_end() && peek() == ',') {
      ++i_;
      skip_ws();
    }
  }
  /// SVG number grammar, including "1.5.5" -> 1.5, .5 and exponents.
  bool number(double& out) {
    skip_ws();
    std::size_t start = i_;
    std::size_t j = i_;
    if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
    bool digits = false;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
      ++j;
      digits = true;
    }
    if (j < s_.size() && s_[j] == '.') {
      ++j;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        ++j;
        digits = true;
      }
    }
    if (!digits) return false;
    if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        j = k;
      }
    }
    std::string tmp(s_.substr(start, j - start));
    out = std::strtod(tmp.c_str(), nullptr);
    i_ = j;
    return std::isfinite(out);
  }
  /// Arc flags may be written without separators ("a1 1 0 014 4").
  bool flag(bool& out) {
    skip_ws_comma();
    if (at_end()) return false;
    char c = peek();
    if (c != '0' && c != '1') return false;
    out = c == '1';
    ++i_;
    return true;
  }
  bool consume(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string_view ident() {
    skip_ws();
    std::size_t start = i_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++i_;
    return s_.substr(start, i_ - start);
  }
  std::size_t pos() const { return i_; }
  void advance() { ++i_; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::optional<Affine> parse_transform(std::string_view text) {
  Scanner sc(text);
  Affine m;
  for (;;) {
    sc.skip_ws_comma();
    if (sc.at_end()) break;
    auto name = sc.ident();
    if (name.empty() || !sc.consume('(')) return std::nullopt;
    std::vector<double> args;
    for (;;) {
      sc.skip_ws();
      if (sc.consume(')')) break;
      double v;
      if (!sc.number(v)) return std::nullopt;
      args.push_back(v);
      sc.skip_ws_comma();
    }
    Affine t;
    auto n = args.size();
    if (name == "matrix") {
      if (n != 6) return std::nullopt;
      t = {args[0], args[1], args[2], args[3], args[4], args[5]};
    } else if (name == "translate") {
      if (n != 1 && n != 2) return std::nullopt;
      t = Affine::translate(args[0], n == 2 ? args[1] : 0);
    } else if (name == "scale") {
      if (n != 1 && n != 2) return std::nullopt;
      t = Affine::scale(args[0], n == 2 ? args[1] : args[0]);
    } else if (name == "rotate") {
      if (n == 1) {
        t = Affine::rotate_deg(args[0]);
      } else if (n == 3) {
        t = Affine::translate(args[1], args[2]) * Affine::rotate_deg(args[0]) *
            Affine::translate(-args[1], -args[2]);
      } else {
        return std::nullopt;
      }
    } else if (name == "skewX") {
      if (n != 1) return std::nullopt;
      t = {1, 0, std::tan(args[0] * std::numbers::pi / 180.0), 1, 0, 0};
    } else if (name == "skewY") {
      if (n != 1) return std::nullopt;
      t = {1, std::tan(args[0] * std::numbers::pi / 180.0), 0, 1, 0, 0};
    } else {
      return std::nullopt;
    }
    m = m * t;
  }
  return m;
}

std::vector<double> parse_number_list(std::string_view text) {
  Scanner sc(text);
  std::vector<double> out;
  for (;;) {
    sc.skip_ws_comma();
    if (sc.at_end()) break;
    double v;
    if (!sc.number(v)) break;
    out.push_back(v);
  }
  return out;
}

namespace {

void append_arc(PathData& out, Point p0, double rx, double ry, double phi_deg, bool large,
                bool sweep, Point p1) {
  if (p0.x == p1.x && p0.y == p1.y) return;
  rx = std::fabs(rx);
  ry = std::fabs(ry);
  if (rx == 0 || ry == 0) {
    out.push_back({PathSeg::Kind::Line, p1});
    return;
  }
  double phi = phi_deg * std::numbers::pi / 180.0;
  double cs = std::cos(phi), sn = std::sin(phi);
  double dx = (p0.x - p1.x) / 2, dy = (p0.y - p1.y) / 2;
  double x1p = cs * dx + sn * dy;
  double y1p = -sn * dx + cs * dy;
  double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
  if (lambda > 1) {
    double s = std::sqrt(lambda);
    rx *= s;
    ry *= s;
  }
  double num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
  double den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
  double coef = den == 0 ? 0 : std::sqrt(std::max(0.0, num / den));
  if (large == sweep) coef = -coef;
  double cxp = coef * rx * y1p / ry;
  double cyp = -coef * ry * x1p / rx;
  double cx = cs * cxp - sn * cyp + (p0.x + p1.x) / 2;
  double cy = sn * cxp + cs * cyp + (p0.y + p1.y) / 2;
  auto angle = [](double ux, double uy, double vx, double vy) {
    return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
  };
  double theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry);
  double dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry);
  if (!sweep && dtheta > 0) dtheta -= 2 * std::numbers::pi;
  if (sweep && dtheta < 0) dtheta += 2 * std::numbers::pi;

  int segs = static_cast<int>(std::ceil(std::fabs(dtheta) / (std::numbers::pi / 2) - 1e-9));
  segs = std::max(segs, 1);
  double delta = dtheta / segs;
  double k = 4.0 / 3.0 * std::tan(delta / 4);
  auto map = [&](double ux, double uy) {
    return Point{cx + rx * ux * cs - ry * uy * sn, cy + rx * ux * sn + ry * uy * cs};
  };
  double t = theta1;
  for (int i = 0; i < segs; ++i) {
    double c1 = std::cos(t), s1 = std::sin(t);
    double t2 = t + delta;
    double c2 = std::cos(t2), s2 = std::sin(t2);
    Point q1 = map(c1 - k * s1, s1 + k * c1);
    Point q2 = map(c2 + k * s2, s2 - k * c2);
    Point q3 = (i == segs - 1) ? p1 : map(c2, s2);
    out.push_back({PathSeg::Kind::Cubic, q1, q2, q3});
    t = t2;
  }
}

}  // namespace

PathData parse_path_data(std::string_view d) {
  PathData out;
  Scanner sc(d);
  Point cur{}, start{}, last_ctrl{};
  char prev_cmd = 0;
  char cmd = 0;
  for (;;) {
    sc.skip_ws_comma();
    if (sc.at_end()) break;
    char c = sc.peek();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      cmd = c;
      sc.advance();
    } else if (cmd == 0) {
      break;  // data must start with a command
    } else if (cmd == 'M') {
      cmd = 'L';
    } else if (cmd == 'm') {
      cmd = 'l';
    } else if (cmd == 'Z' || cmd == 'z') {
      break;
    }
    if (out.empty() && cmd != 'M' && cmd != 'm') break;
    bool rel = std::islower(static_cast<unsigned char>(cmd)) != 0;
    char up = static_cast<char>(std::toupper(static_cast<unsigned char>(cmd)));
    auto rp = [&](double x, double y) { return rel ? Point{cur.x + x, cur.y + y} : Point{x, y}; };
    double v[7];
    auto read = [&](int n) {
      for (int i = 0; i < n; ++i) {
        if (i) sc.skip_ws_comma();
        if (!sc.number(v[i])) return false;
      }
      return true;
    };
    bool ok = true;
    switch (up) {
      case 'M':
        if (!(ok = read(2))) break;
        cur = rp(v[0], v[1]);
        start = cur;
        out.push_back({PathSeg::Kind::Move, cur});
        break;
      case 'L':
        if (!(ok = read(2))) break;
        cur = rp(v[0], v[1]);
        out.push_back({PathSeg::Kind::Line, cur});
        break;
      case 'H':
        if (!(ok = read(1))) break;
        cur = {rel ? cur.x + v[0] : v[0], cur.y};
        out.push_back({PathSeg::Kind::Line, cur});
        break;
      case 'V':
        if (!(ok = read(1))) break;
        cur = {cur.x, rel ? cur.y + v[0] : v[0]};
        out.push_back({PathSeg::Kind::Line, cur});
        break;
      case 'C': {
        if (!(ok = read(6))) break;
        Point c1 = rp(v[0], v[1]), c2 = rp(v[2], v[3]), e = rp(v[4], v[5]);
        out.push_back({PathSeg::Kind::Cubic, c1, c2, e});
        last_ctrl = c2;
        cur = e;
        break;
      }
      case 'S': {
        if (!(ok = read(4))) break;
        char pu = static_cast<char>(std::toupper(static_cast<unsigned char>(prev_cmd)));
        Point c1 = (pu == 'C' || pu == 'S') ? Point{2 * cur.x - last_ctrl.x, 2 * cur.y - last_ctrl.y}
                                            : cur;
        Point c2 = rp(v[0], v[1]), e = rp(v[2], v[3]);
        out.push_back({PathSeg::Kind::Cubic, c1, c2, e});
        last_ctrl = c2;
        cur = e;
        break;
      }
      case 'Q':
      case 'T': {
        Point q, e;
        if (up == 'Q') {
          if (!(ok = read(4))) break;
          q = rp(v[0], v[1]);
          e = rp(v[2], v[3]);
        } else {
          if (!(ok = read(2))) break;
          char pu = static_cast<char>(std::toupper(static_cast<unsigned char>(prev_cmd)));
          q = (pu == 'Q' || pu == 'T') ? Point{2 * cur.x - last_ctrl.x, 2 * cur.y - last_ctrl.y} : cur;
          e = rp(v[0], v[1]);
        }
        Point c1{cur.x + 2.0 / 3.0 * (q.x - cur.x), cur.y + 2.0 / 3.0 * (q.y - cur.y)};
        Point c2{e.x + 2.0 / 3.0 * (q.x - e.x), e.y + 2.0 / 3.0 * (q.y - e.y)};
        out.push_back({PathSeg::Kind::Cubic, c1, c2, e});
        last_ctrl = q;
        cur = e;
        break;
      }
      case 'A': {
        bool large = false, sweep = false;
        if (!(ok = read(3))) break;
        if (!(ok = sc.flag(large) && sc.flag(sweep))) break;
        sc.skip_ws_comma();
        double ex, ey;
        if (!(ok = sc.number(ex))) break;
        sc.skip_ws_comma();
        if (!(ok = sc.number(ey))) break;
        Point e = rp(ex, ey);
        append_arc(out, cur, v[0], v[1], v[2], large, sweep, e);
        cur = e;
        break;
      }
      case 'Z':
        out.push_back({PathSeg::Kind::Close});
        cur = start;
        break;
      default:
        ok = false;
    }
    if (!ok) break;
    prev_cmd = cmd;
  }
  return out;
}

PathData rect_path(double x, double y, double w, double h, double rx, double ry) {
  PathData p;
  rx = std::min(rx, w / 2);
  ry = std::min(ry, h / 2);
  if (rx <= 0 || ry <= 0) {
    p.push_back({PathSeg::Kind::Move, {x, y}});
    p.push_back({PathSeg::Kind::Line, {x + w, y}});
    p.push_back({PathSeg::Kind::Line, {x + w, y + h}});
    p.push_back({PathSeg::Kind::Line, {x, y + h}});
    p.push_back({PathSeg::Kind::Close});
    return p;
  }
  p.push_back({PathSeg::Kind::Move, {x + rx, y}});
  p.push_back({PathSeg::Kind::Line, {x + w - rx, y}});
  append_arc(p, {x + w - rx, y}, rx, ry, 0, false, true, {x + w, y + ry});
  p.push_back({PathSeg::Kind::Line, {x + w, y + h - ry}});
  append_arc(p, {x + w, y + h - ry}, rx, ry, 0, false, true, {x + w - rx, y + h});
  p.push_back({PathSeg::Kind::Line, {x + rx, y + h}});
  append_arc(p, {x + rx, y + h}, rx, ry, 0, false, true, {x, y + h - ry});
  p.push_back({PathSeg::Kind::Line, {x, y + ry}});
  append_arc(p, {x, y + ry}, rx, ry, 0, false, true, {x + rx, y});
  p.push_back({PathSeg::Kind::Close});
  return p;
}

PathData ellipse_path(double cx, double cy, double rx, double ry) {
  PathData p;
  p.push_back({PathSeg::Kind::Move, {cx + rx, cy}});
  append_arc(p, {cx + rx, cy}, rx, ry, 0, false, true, {cx, cy + ry});
  append_arc(p, {cx, cy + ry}, rx, ry, 0, false, true, {cx - rx, cy});
  append_arc(p, {cx - rx, cy}, rx, ry, 0, false, true, {cx, cy - ry});
  append_arc(p, {cx, cy - ry}, rx, ry, 0, false, true, {cx + rx, cy});
  p.push_back({PathSeg::Kind::Close});
  return p;
}

std::vector<Polyline> flatten(const PathData& path, double tolerance) {
  std::vector<Polyline> out;
  Point cur{};
  Point start{};
  auto ensure_open = [&]() {
    if (out.empty() || out.back().closed) {
      out.push_back({});
      out.back().points.push_back(cur);
    }
  };
  for (const auto& seg : path) {
    switch (seg.kind) {
      case PathSeg::Kind::Move:
        cur = start = seg.p1;
        out.push_back({});
        out.back().points.push_back(cur);
        break;
      case PathSeg::Kind::Line:
        ensure_open();
        cur = seg.p1;
        out.back().points.push_back(cur);
        break;
      case PathSeg::Kind::Cubic: {
        ensure_open();
        Point p0 = cur, p1 = seg.p1, p2 = seg.p2, p3 = seg.p3;
        double ddx = std::max(std::fabs(p0.x - 2 * p1.x + p2.x), std::fabs(p1.x - 2 * p2.x + p3.x));
        double ddy = std::max(std::fabs(p0.y - 2 * p1.y + p2.y), std::fabs(p1.y - 2 * p2.y + p3.y));
        double dd = std::hypot(ddx, ddy);
        int n = static_cast<int>(std::ceil(std::sqrt(0.75 * dd / tolerance)));
        n = std::clamp(n, 1, 512);
        for (int i = 1; i <= n; ++i) {
          double t = static_cast<double>(i) / n;
          double mt = 1 - t;
          double w0 = mt * mt * mt, w1 = 3 * mt * mt * t, w2 = 3 * mt * t * t, w3 = t * t * t;
          out.back().points.push_back({w0 * p0.x + w1 * p1.x + w2 * p2.x + w3 * p3.x,
                                       w0 * p0.y + w1 * p1.y + w2 * p2.y + w3 * p3.y});
        }
        cur = p3;
        break;
      }
      case PathSeg::Kind::Close:
        if (!out.empty() && !out.back().closed) {
          out.back().closed = true;
        }
        cur = start;
        break;
    }
  }
  return out;
}

}  // namespace meol::svg::detail

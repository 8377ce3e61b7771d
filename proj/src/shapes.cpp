// Copyright 2026 The eulergram Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eulergram/shapes.hpp"

#include <algorithm>
#include <memory>
#include <array>
#include <cmath>
#include <map>

#include "eulergram/detail/arrangement.hpp"
#include "eulergram/error.hpp"

namespace eulergram::shapes {

using lattice::IndicatorSet;
using lattice::IntervalList;

namespace {

std::array<Vec2, 4> rect_corners(const Rect& r) {
  return {Vec2{r.x0, r.y0}, Vec2{r.x1, r.y0}, Vec2{r.x0, r.y1}, Vec2{r.x1, r.y1}};
}

nlohmann::json rect_json(const Rect& r) { return {r.x0, r.x1, r.y0, r.y1}; }

}  // namespace

PolyRectangle::PolyRectangle(std::vector<Rect> rects) : rects_(std::move(rects)) {
  for (const Rect& r : rects_) {
    if (!std::isfinite(r.x0) || !std::isfinite(r.x1) || !std::isfinite(r.y0) ||
        !std::isfinite(r.y1) || !r.valid()) {
      throw Error(ErrorKind::kInvalidSpec, "rectangle must be finite with x0 < x1 and y0 < y1",
                  {{"rect", rect_json(r)}});
    }
  }
  std::map<std::pair<double, double>, std::size_t> seen;
  for (std::size_t k = 0; k < rects_.size(); ++k) {
    for (const Vec2 c : rect_corners(rects_[k])) {
      auto [it, fresh] = seen.emplace(std::make_pair(c.x, c.y), k);
      if (!fresh) {
        throw Error(ErrorKind::kCornerClash, "two member rectangles share a corner",
                    {{"corner", {c.x, c.y}},
                     {"first", rect_json(rects_[it->second])},
                     {"second", rect_json(rects_[k])}});
      }
    }
  }
  build_cache();
}

Rect PolyRectangle::bounding_box() const {
  if (rects_.empty()) return {};
  Rect b = rects_.front();
  for (const Rect& r : rects_) b = b.united(r);
  return b;
}

bool PolyRectangle::contains(Vec2 p) const {
  return std::any_of(rects_.begin(), rects_.end(), [p](const Rect& r) { return r.contains(p); });
}

PolyRectangle PolyRectangle::translated(Vec2 v) const {
  std::vector<Rect> moved;
  moved.reserve(rects_.size());
  for (const Rect& r : rects_) moved.push_back(r.translated(v));
  return PolyRectangle(std::move(moved));
}

void PolyRectangle::build_cache() {
  if (rects_.empty()) return;
  const auto cx = detail::union_complex(rects_, bounding_box());
  const auto f = detail::analyze(cx);
  per1_ = f.per1;
  per2_ = f.per2;
  area_ = f.vol;
  chi_ = f.out_corners - f.in_corners;

  const auto& xs = cx.xs();
  const auto& ys = cx.ys();
  const int vx = static_cast<int>(xs.size());
  const int vy = static_cast<int>(ys.size());
  for (int j = 0; j < vy; ++j) {
    for (int i = 0; i < vx; ++i) {
      const bool sw = cx.cell(i - 1, j - 1), se = cx.cell(i, j - 1);
      const bool nw = cx.cell(i - 1, j), ne = cx.cell(i, j);
      const int n = sw + se + nw + ne;
      if (n % 2 == 0) continue;
      CornerClass cls = CornerClass::kOther;
      if (sw && !se && !nw) cls = CornerClass::kNorthEastOutward;
      else if (!ne && nw && se) cls = CornerClass::kSouthWestInward;
      corners_.push_back({{xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]}, cls});
    }
  }

  auto vertex_on_boundary = [&](Vec2 p) {
    const int i = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
    const int j = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin());
    return !(cx.cell(i - 1, j - 1) && cx.cell(i, j - 1) && cx.cell(i - 1, j) && cx.cell(i, j));
  };
  for (const Rect& r : rects_) {
    for (const Vec2 c : rect_corners(r)) {
      if (vertex_on_boundary(c)) member_corners_.push_back(c);
    }
  }

  // Maximal edges: runs of unit segments with the same outward normal.
  for (int j = 0; j < vy; ++j) {
    int start = -1;
    double ny = 0.0;
    for (int i = 0; i <= vx - 1; ++i) {
      double n = 0.0;
      if (i + 1 < vx) {
        const bool below = cx.cell(i, j - 1), above = cx.cell(i, j);
        if (below != above) n = above ? -1.0 : 1.0;
      }
      if (start >= 0 && n != ny) {
        edges_.push_back({{xs[static_cast<std::size_t>(start)], ys[static_cast<std::size_t>(j)]},
                          {xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]},
                          {0.0, ny}});
        start = -1;
      }
      if (start < 0 && n != 0.0) {
        start = i;
        ny = n;
      }
    }
  }
  for (int i = 0; i < vx; ++i) {
    int start = -1;
    double nx = 0.0;
    for (int j = 0; j <= vy - 1; ++j) {
      double n = 0.0;
      if (j + 1 < vy) {
        const bool left = cx.cell(i - 1, j), right = cx.cell(i, j);
        if (left != right) n = right ? -1.0 : 1.0;
      }
      if (start >= 0 && n != nx) {
        edges_.push_back({{xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(start)]},
                          {xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]},
                          {nx, 0.0}});
        start = -1;
      }
      if (start < 0 && n != 0.0) {
        start = j;
        nx = n;
      }
    }
  }
}

PolyRectFeatures polyrect_features(const PolyRectangle& w) {
  PolyRectFeatures f;
  f.per1 = w.per1();
  f.per2 = w.per2();
  f.vol = w.area();
  for (const Corner& c : w.corners()) {
    if (c.cls == CornerClass::kNorthEastOutward) ++f.out_corners;
    if (c.cls == CornerClass::kSouthWestInward) ++f.in_corners;
  }
  f.chi = f.out_corners - f.in_corners;
  return f;
}

IndicatorSet disc(Vec2 center, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::kInvalidSpec, "disc radius must be positive", {{"r", r}});
  }
  const double r2 = r * r;
  IndicatorSet s([center, r2](Vec2 p) {
                   const Vec2 d = p - center;
                   return d.x * d.x + d.y * d.y <= r2;
                 },
                 Rect{center.x - r, center.x + r, center.y - r, center.y + r}, r);
  s.with_row_spans([center, r2](double y, IntervalList& out) {
    out.clear();
    const double dy = y - center.y;
    if (dy * dy > r2) return;
    const double half = std::sqrt(r2 - dy * dy);
    out.push_back({center.x - half, center.x + half});
  });
  s.with_normal([center](Vec2 p) {
    const Vec2 d = p - center;
    const double n = norm(d);
    return n > 0.0 ? (1.0 / n) * d : Vec2{1.0, 0.0};
  });
  s.with_signed_distance([center, r](Vec2 p) { return norm(p - center) - r; });
  return s;
}

IndicatorSet annulus(Vec2 center, double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out)) {
    throw Error(ErrorKind::kInvalidSpec, "annulus needs 0 < r_in < r_out",
                {{"r_in", r_in}, {"r_out", r_out}});
  }
  const double i2 = r_in * r_in, o2 = r_out * r_out;
  IndicatorSet s([center, i2, o2](Vec2 p) {
                   const Vec2 d = p - center;
                   const double q = d.x * d.x + d.y * d.y;
                   return q >= i2 && q <= o2;
                 },
                 Rect{center.x - r_out, center.x + r_out, center.y - r_out, center.y + r_out},
                 std::min(r_in, r_out - r_in));
  s.with_row_spans([center, i2, o2](double y, IntervalList& out) {
    out.clear();
    const double dy2 = (y - center.y) * (y - center.y);
    if (dy2 > o2) return;
    const double ho = std::sqrt(o2 - dy2);
    if (dy2 >= i2) {
      out.push_back({center.x - ho, center.x + ho});
      return;
    }
    const double hi = std::sqrt(i2 - dy2);
    out.push_back({center.x - ho, center.x - hi});
    out.push_back({center.x + hi, center.x + ho});
  });
  const double mid = 0.5 * (r_in + r_out);
  s.with_normal([center, mid](Vec2 p) {
    const Vec2 d = p - center;
    const double n = norm(d);
    if (n == 0.0) return Vec2{-1.0, 0.0};
    return (n >= mid ? 1.0 / n : -1.0 / n) * d;
  });
  s.with_signed_distance([center, r_in, r_out](Vec2 p) {
    const double n = norm(p - center);
    return std::max(n - r_out, r_in - n);
  });
  return s;
}

IndicatorSet implicit_set(std::function<double(Vec2)> g, std::function<Vec2(Vec2)> grad,
                          Rect bounding_box, std::optional<double> regularity_radius) {
  if (!g || !grad || !bounding_box.valid()) {
    throw Error(ErrorKind::kInvalidSpec, "implicit set needs g, its gradient and a bounding box");
  }
  IndicatorSet s([g, bounding_box](Vec2 p) { return bounding_box.contains(p) && g(p) <= 0.0; },
                 bounding_box, regularity_radius);
  s.with_normal([grad](Vec2 p) {
    const Vec2 v = grad(p);
    const double n = norm(v);
    return n > 0.0 ? (1.0 / n) * v : Vec2{1.0, 0.0};
  });
  s.with_signed_distance([g, grad](Vec2 p) {
    const double n = norm(grad(p));
    return n > 0.0 ? g(p) / n : g(p);
  });
  return s;
}

IndicatorSet bumps(std::vector<Vec2> centers, double amplitude, double sigma, double threshold) {
  if (centers.empty() || !(amplitude > 0.0) || !(sigma > 0.0) || !(threshold > 0.0)) {
    throw Error(ErrorKind::kInvalidSpec, "bumps need centers and positive amplitude, sigma, threshold",
                {{"amplitude", amplitude}, {"sigma", sigma}, {"threshold", threshold}});
  }
  // Beyond this radius of every center the field is below threshold.
  const double total = amplitude * static_cast<double>(centers.size());
  const double reach = total > threshold ? sigma * std::sqrt(2.0 * std::log(total / threshold)) : 0.0;
  Rect box{centers[0].x, centers[0].x, centers[0].y, centers[0].y};
  for (const Vec2 c : centers) box = box.united({c.x, c.x, c.y, c.y});
  box = box.dilated(reach + sigma * 1e-6);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  auto g = [centers, amplitude, inv, threshold](Vec2 p) {
    double f = 0.0;
    for (const Vec2 c : centers) {
      const Vec2 d = p - c;
      f += amplitude * std::exp(-(d.x * d.x + d.y * d.y) * inv);
    }
    return threshold - f;
  };
  auto grad = [centers, amplitude, inv](Vec2 p) {
    Vec2 v{};
    for (const Vec2 c : centers) {
      const Vec2 d = p - c;
      const double w = 2.0 * inv * amplitude * std::exp(-(d.x * d.x + d.y * d.y) * inv);
      v = v + w * d;
    }
    return v;
  };
  return implicit_set(g, grad, box);
}

IndicatorSet union_of(const std::vector<IndicatorSet>& parts_in) {
  if (parts_in.empty()) return lattice::empty_set();
  auto parts = std::make_shared<const std::vector<IndicatorSet>>(parts_in);
  Rect box = parts_in.front().bounding_box();
  std::optional<double> rho;
  bool all_rho = true, all_normals = true, all_spans = true;
  for (const auto& p : parts_in) {
    box = box.united(p.bounding_box());
    if (!p.regularity_radius()) all_rho = false;
    else rho = rho ? std::min(*rho, *p.regularity_radius()) : *p.regularity_radius();
    if (!p.has_normal() || !p.has_signed_distance()) all_normals = false;
    if (!p.has_row_spans()) all_spans = false;
  }
  IndicatorSet merged(
      [parts](Vec2 q) {
        return std::any_of(parts->begin(), parts->end(), [q](const IndicatorSet& p) {
          const Rect& b = p.bounding_box();
          return q.x >= b.x0 && q.x <= b.x1 && q.y >= b.y0 && q.y <= b.y1 && p.contains(q);
        });
      },
      box, all_rho ? rho : std::nullopt);
  if (all_spans) {
    merged.with_row_spans([parts](double y, IntervalList& spans) {
      spans.clear();
      IntervalList s;
      for (const auto& p : *parts) {
        if (y < p.bounding_box().y0 || y > p.bounding_box().y1) continue;
        p.row_spans(y, s);
        spans = lattice::unite(spans, s);
      }
    });
  }
  if (all_normals) {
    // The part whose boundary is nearest owns the point.
    auto nearest = [parts](Vec2 q) {
      std::size_t best = 0;
      double d = std::abs((*parts)[0].signed_distance(q));
      for (std::size_t k = 1; k < parts->size(); ++k) {
        const double dk = std::abs((*parts)[k].signed_distance(q));
        if (dk < d) { d = dk; best = k; }
      }
      return best;
    };
    merged.with_normal([parts, nearest](Vec2 q) { return (*parts)[nearest(q)].normal(q); });
    merged.with_signed_distance([parts](Vec2 q) {
      double d = (*parts)[0].signed_distance(q);
      for (std::size_t k = 1; k < parts->size(); ++k) d = std::min(d, (*parts)[k].signed_distance(q));
      return d;
    });
  }
  return merged;
}

IndicatorSet make_indicator(const PolyRectangle& w) {
  if (w.empty()) return lattice::empty_set();
  const auto rects = w.rects();
  IndicatorSet s([rects](Vec2 p) {
                   return std::any_of(rects.begin(), rects.end(),
                                      [p](const Rect& r) { return r.contains(p); });
                 },
                 w.bounding_box());
  s.with_row_spans([rects](double y, IntervalList& out) {
    IntervalList all;
    for (const Rect& r : rects) {
      if (y >= r.y0 && y <= r.y1) all.push_back({r.x0, r.x1});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    out.clear();
    for (const auto& iv : all) {
      if (!out.empty() && iv.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, iv.hi);
      else out.push_back(iv);
    }
  });
  return s;
}

namespace {

Vec2 read_point(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorKind::kInvalidSpec, std::string("expected [x, y] for ") + key);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Rect read_rect(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 4) {
    throw Error(ErrorKind::kInvalidSpec, "expected [x0, x1, y0, y1]", {{"got", v}});
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

}  // namespace

PolyRectangle make_polyrect(const nlohmann::json& spec) {
  try {
    std::vector<Rect> rects;
    for (const auto& r : spec.at("rects")) rects.push_back(read_rect(r));
    return PolyRectangle(std::move(rects));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("bad polyrectangle: ") + e.what(),
                {{"spec", spec}});
  }
}

IndicatorSet make_shape(const nlohmann::json& spec) {
  try {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "disc") return disc(read_point(spec, "center"), spec.at("r").get<double>());
    if (type == "annulus") {
      return annulus(read_point(spec, "center"), spec.at("r_in").get<double>(),
                     spec.at("r_out").get<double>());
    }
    if (type == "union") {
      std::vector<IndicatorSet> parts;
      for (const auto& p : spec.at("parts")) parts.push_back(make_shape(p));
      return union_of(parts);
    }
    if (type == "rect") return make_indicator(PolyRectangle::single(read_rect(spec.at("rect"))));
    if (type == "polyrect") return make_indicator(make_polyrect(spec));
    if (type == "bumps") {
      std::vector<Vec2> centers;
      for (const auto& c : spec.at("centers")) centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      return bumps(std::move(centers), spec.value("amplitude", 1.0), spec.at("sigma").get<double>(),
                   spec.at("threshold").get<double>());
    }
    throw Error(ErrorKind::kInvalidSpec, "unknown shape type", {{"type", type}});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("bad shape spec: ") + e.what(), {{"spec", spec}});
  }
}

}  // namespace eulergram::shapes

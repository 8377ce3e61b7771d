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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulergram/geometry.hpp"
#include "eulergram/lattice.hpp"

namespace eulergram::shapes {

enum class CornerClass { kNorthEastOutward, kSouthWestInward, kOther };

struct Corner {
  Vec2 point;
  CornerClass cls = CornerClass::kOther;
};

// Maximal boundary segment with its outward normal (one of +-u1, +-u2).
struct Edge {
  Vec2 a;
  Vec2 b;
  Vec2 normal;
  double length() const { return norm(b - a); }
};

// Finite union of closed axis-aligned rectangles, no two of which share a
// corner. Members may overlap or share parts of edges.
class PolyRectangle {
 public:
  PolyRectangle() = default;
  // Throws InvalidSpec for empty or inverted rectangles and CornerClash when
  // two members share a corner.
  explicit PolyRectangle(std::vector<Rect> rects);
  static PolyRectangle single(const Rect& r) { return PolyRectangle({r}); }

  const std::vector<Rect>& rects() const { return rects_; }
  bool empty() const { return rects_.empty(); }
  Rect bounding_box() const;
  bool contains(Vec2 p) const;
  PolyRectangle translated(Vec2 v) const;

  // Turning points of the boundary with their class.
  const std::vector<Corner>& corners() const { return corners_; }
  // Member corners lying on the boundary of the union.
  const std::vector<Vec2>& boundary_member_corners() const { return member_corners_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double per1() const { return per1_; }
  double per2() const { return per2_; }
  double area() const { return area_; }
  std::int64_t chi() const { return chi_; }

 private:
  void build_cache();

  std::vector<Rect> rects_;
  std::vector<Corner> corners_;
  std::vector<Vec2> member_corners_;
  std::vector<Edge> edges_;
  double per1_ = 0.0;
  double per2_ = 0.0;
  double area_ = 0.0;
  std::int64_t chi_ = 0;
};

struct PolyRectFeatures {
  std::int64_t chi = 0;
  double per1 = 0.0;  // total length of edges with normal along u1
  double per2 = 0.0;  // total length of edges with normal along u2
  double vol = 0.0;
  std::int64_t out_corners = 0;
  std::int64_t in_corners = 0;
};

PolyRectFeatures polyrect_features(const PolyRectangle& w);

// Shape constructors. Throw InvalidSpec on bad parameters.
lattice::IndicatorSet disc(Vec2 center, double r);
lattice::IndicatorSet annulus(Vec2 center, double r_in, double r_out);
// {g <= 0} for a smooth g; the normal is grad g / |grad g| and the signed
// distance its first-order estimate g / |grad g|.
lattice::IndicatorSet implicit_set(std::function<double(Vec2)> g,
                                   std::function<Vec2(Vec2)> grad, Rect bounding_box,
                                   std::optional<double> regularity_radius = {});
// {sum_k a exp(-|x - c_k|^2 / (2 s^2)) >= threshold}.
lattice::IndicatorSet bumps(std::vector<Vec2> centers, double amplitude, double sigma,
                            double threshold);
// Union of sets with pairwise positive boundary gaps (not verified).
lattice::IndicatorSet union_of(const std::vector<lattice::IndicatorSet>& parts);
lattice::IndicatorSet make_indicator(const PolyRectangle& w);

// Parses {"type": "disc"|"annulus"|"union"|"rect"|"polyrect"|"bumps", ...}.
lattice::IndicatorSet make_shape(const nlohmann::json& spec);
// Parses {"rects": [[x0,x1,y0,y1], ...]}.
PolyRectangle make_polyrect(const nlohmann::json& spec);

enum class MorphOp { kDilate, kErode };

struct MorphologyResult {
  lattice::BitGrid grid;
  double radius;
  MorphOp op;
};

// Squared Euclidean distance, in cells, from every cell to the nearest set
// cell; cells of an empty grid get +infinity.
std::vector<double> squared_distance_transform(const lattice::BitGrid& grid);

// Ball dilation or erosion of radius r on the grid's own lattice. Erosion
// treats everything outside the grid as background. Throws RadiusTooSmall
// when r is below the mesh.
MorphologyResult morph(const lattice::BitGrid& grid, double radius, MorphOp op);

struct Crossing {
  Vec2 point;
  double angle;  // between n_F and the line of n_W, in [0, pi/2]
  bool tangential;
};

struct TransversalityReport {
  bool pass = true;
  double min_angle = 0.0;  // pi/2 when nothing crosses
  bool corner_hit = false;
  std::vector<Crossing> crossings;
};

// Numerical screen of the window-compatibility condition. Throws
// NoNormalAvailable when the set has no normal field.
TransversalityReport check_transversality(const lattice::IndicatorSet& set,
                                          const PolyRectangle& w, double angle_tol = 1e-3,
                                          int n_samples = 4096, double corner_tol = 1e-6);

}  // namespace eulergram::shapes

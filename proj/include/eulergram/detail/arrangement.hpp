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
#include <span>
#include <vector>

#include "eulergram/geometry.hpp"

// Cell arrangement of a finite family of axis-aligned rectangles: the plane is
// cut along every rectangle coordinate, and each open cell carries a value
// that is constant on it. Unions, level sets of sums and their boundary
// features are all read off this structure.
namespace eulergram::detail {

struct WeightedRect {
  Rect rect;
  double weight = 1.0;
};

class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(std::vector<double> xs, std::vector<double> ys);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  int cells_x() const { return static_cast<int>(xs_.size()) - 1; }
  int cells_y() const { return static_cast<int>(ys_.size()) - 1; }

  // Occupancy of the open cell (i, j); out-of-range cells are empty.
  bool cell(int i, int j) const {
    return i >= 0 && j >= 0 && i < cells_x() && j < cells_y() &&
           occupied_[static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_x()) +
                     static_cast<std::size_t>(i)] != 0;
  }
  void set_cell(int i, int j, bool v) {
    occupied_[static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_x()) +
              static_cast<std::size_t>(i)] = v ? 1 : 0;
  }
  // Index of the cell column whose open interval holds x, or -1 outside.
  int locate_x(double x) const { return locate(xs_, x); }
  int locate_y(double y) const { return locate(ys_, y); }
  // Occupancy of the open cell containing p; points outside are empty.
  bool occupied_at(Vec2 p) const { return cell(locate_x(p.x), locate_y(p.y)); }

  Rect extent() const { return {xs_.front(), xs_.back(), ys_.front(), ys_.back()}; }

 private:
  static int locate(const std::vector<double>& c, double v);

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::uint8_t> occupied_;
};

// Sorted coordinate list with exact duplicates removed.
std::vector<double> unique_sorted(std::vector<double> v);

// Throws DegenerateArrangement when two distinct coordinates lie within tol.
void require_separated(std::span<const double> sorted, double tol, const char* axis);

// Sum of weights of the rectangles covering each open cell (row-major).
std::vector<double> cell_sums(const std::vector<double>& xs, const std::vector<double>& ys,
                              std::span<const WeightedRect> rects);

// Arrangement of the union of `rects`, restricted to `clip`.
CellComplex union_complex(std::span<const Rect> rects, const Rect& clip);

struct ComplexFeatures {
  std::int64_t chi = 0;          // V - E + F of the closed occupied cells
  std::int64_t out_corners = 0;  // occupied to the SW only among the three
  std::int64_t in_corners = 0;   // empty to the NE, occupied NW and SE
  std::int64_t x_vertices = 0;   // diagonal contacts
  double per1 = 0.0;             // edges with normal along u1 (vertical edges)
  double per2 = 0.0;             // edges with normal along u2
  double vol = 0.0;
};

ComplexFeatures analyze(const CellComplex& cx);

}  // namespace eulergram::detail

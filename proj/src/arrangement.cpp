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

#include "eulergram/detail/arrangement.hpp"

#include <algorithm>

#include "eulergram/error.hpp"

namespace eulergram::detail {

CellComplex::CellComplex(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || ys_.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "arrangement needs two coordinates per axis");
  }
  occupied_.assign(static_cast<std::size_t>(cells_x()) * static_cast<std::size_t>(cells_y()), 0);
}

int CellComplex::locate(const std::vector<double>& c, double v) {
  if (v < c.front() || v >= c.back()) return -1;
  return static_cast<int>(std::upper_bound(c.begin(), c.end(), v) - c.begin()) - 1;
}

std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_separated(std::span<const double> sorted, double tol, const char* axis) {
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] - sorted[k - 1] < tol) {
      throw Error(ErrorKind::kDegenerateArrangement,
                  "two rectangle coordinates nearly coincide; perturb germ locations",
                  {{"axis", axis}, {"a", sorted[k - 1]}, {"b", sorted[k]}, {"tolerance", tol}});
    }
  }
}

namespace {

// Cell index range [first, last) covered by the coordinate interval [lo, hi].
std::pair<int, int> cell_range(const std::vector<double>& c, double lo, double hi) {
  const auto first = std::lower_bound(c.begin(), c.end(), lo) - c.begin();
  const auto last = std::lower_bound(c.begin(), c.end(), hi) - c.begin();
  return {static_cast<int>(first), static_cast<int>(last)};
}

}  // namespace

std::vector<double> cell_sums(const std::vector<double>& xs, const std::vector<double>& ys,
                              std::span<const WeightedRect> rects) {
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  // 2-D difference array, one extra row and column.
  const auto stride = static_cast<std::size_t>(nx + 1);
  std::vector<double> diff(stride * static_cast<std::size_t>(ny + 1), 0.0);
  auto at = [&](int i, int j) -> double& {
    return diff[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)];
  };
  for (const auto& wr : rects) {
    auto [i0, i1] = cell_range(xs, wr.rect.x0, wr.rect.x1);
    auto [j0, j1] = cell_range(ys, wr.rect.y0, wr.rect.y1);
    if (i0 >= i1 || j0 >= j1) continue;
    at(i0, j0) += wr.weight;
    at(i1, j0) -= wr.weight;
    at(i0, j1) -= wr.weight;
    at(i1, j1) += wr.weight;
  }
  std::vector<double> out(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  std::vector<double> column(static_cast<std::size_t>(nx + 1), 0.0);
  for (int j = 0; j < ny; ++j) {
    double run = 0.0;
    for (int i = 0; i < nx; ++i) {
      column[static_cast<std::size_t>(i)] += at(i, j);
      run += column[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)] = run;
    }
  }
  return out;
}

CellComplex union_complex(std::span<const Rect> rects, const Rect& clip) {
  std::vector<double> xs{clip.x0, clip.x1}, ys{clip.y0, clip.y1};
  std::vector<WeightedRect> kept;
  for (const Rect& r : rects) {
    if (!r.intersects(clip)) continue;
    const Rect c{std::max(r.x0, clip.x0), std::min(r.x1, clip.x1), std::max(r.y0, clip.y0),
                 std::min(r.y1, clip.y1)};
    xs.push_back(c.x0);
    xs.push_back(c.x1);
    ys.push_back(c.y0);
    ys.push_back(c.y1);
    kept.push_back({c, 1.0});
  }
  CellComplex cx(unique_sorted(std::move(xs)), unique_sorted(std::move(ys)));
  const auto sums = cell_sums(cx.xs(), cx.ys(), kept);
  for (int j = 0; j < cx.cells_y(); ++j) {
    for (int i = 0; i < cx.cells_x(); ++i) {
      cx.set_cell(i, j, sums[static_cast<std::size_t>(j) * static_cast<std::size_t>(cx.cells_x()) +
                             static_cast<std::size_t>(i)] > 0.5);
    }
  }
  return cx;
}

ComplexFeatures analyze(const CellComplex& cx) {
  ComplexFeatures f;
  const auto& xs = cx.xs();
  const auto& ys = cx.ys();
  const int vx = static_cast<int>(xs.size());
  const int vy = static_cast<int>(ys.size());
  std::int64_t vertices = 0, edges = 0, faces = 0;
  for (int j = 0; j < vy; ++j) {
    for (int i = 0; i < vx; ++i) {
      const bool sw = cx.cell(i - 1, j - 1), se = cx.cell(i, j - 1);
      const bool nw = cx.cell(i - 1, j), ne = cx.cell(i, j);
      if (sw || se || nw || ne) ++vertices;
      if (sw && !se && !nw) ++f.out_corners;
      if (!ne && nw && se) ++f.in_corners;
      if ((sw && ne && !se && !nw) || (se && nw && !sw && !ne)) ++f.x_vertices;
      if (i + 1 < vx) {  // horizontal edge to the east
        const bool below = cx.cell(i, j - 1), above = cx.cell(i, j);
        if (below || above) ++edges;
        if (below != above) f.per2 += xs[static_cast<std::size_t>(i) + 1] - xs[static_cast<std::size_t>(i)];
      }
      if (j + 1 < vy) {  // vertical edge to the north
        const bool left = cx.cell(i - 1, j), right = cx.cell(i, j);
        if (left || right) ++edges;
        if (left != right) f.per1 += ys[static_cast<std::size_t>(j) + 1] - ys[static_cast<std::size_t>(j)];
      }
      if (i + 1 < vx && j + 1 < vy && ne) {
        ++faces;
        f.vol += (xs[static_cast<std::size_t>(i) + 1] - xs[static_cast<std::size_t>(i)]) *
                 (ys[static_cast<std::size_t>(j) + 1] - ys[static_cast<std::size_t>(j)]);
      }
    }
  }
  f.chi = vertices - edges + faces;
  return f;
}

}  // namespace eulergram::detail

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

#include "eulergram/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "eulergram/error.hpp"
#include "eulergram/simd.hpp"

namespace eulergram::variogram {
namespace {

using lattice::BitGrid;
using lattice::IndicatorSet;
using lattice::IntervalList;

struct Offset {
  int di;
  int dj;
};

int lattice_coordinate(double value, double epsilon, const char* axis) {
  const double t = value / epsilon;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw Error(ErrorKind::kNonLatticeShift, "shift is not a multiple of the lattice mesh",
                {{"axis", axis}, {"value", value}, {"epsilon", epsilon}});
  }
  return static_cast<int>(r);
}

Offset to_offset(Vec2 v, double epsilon) {
  return {lattice_coordinate(v.x, epsilon, "x"), lattice_coordinate(v.y, epsilon, "y")};
}

// Closed index ranges [first, last] of quadrature nodes along one row.
using IndexRanges = std::vector<std::pair<std::int64_t, std::int64_t>>;

void to_index_ranges(const IntervalList& spans, double shift_x, double x0, double h,
                     std::int64_t n, IndexRanges& out) {
  out.clear();
  for (const auto& s : spans) {
    auto first = static_cast<std::int64_t>(std::ceil((s.lo + shift_x - x0) / h - 0.5));
    auto last = static_cast<std::int64_t>(std::floor((s.hi + shift_x - x0) / h - 0.5));
    first = std::max<std::int64_t>(first, 0);
    last = std::min<std::int64_t>(last, n - 1);
    if (first > last) continue;
    if (!out.empty() && first <= out.back().second + 1) {
      out.back().second = std::max(out.back().second, last);
    } else {
      out.emplace_back(first, last);
    }
  }
}

IndexRanges intersect_ranges(const IndexRanges& a, const IndexRanges& b) {
  IndexRanges out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto lo = std::max(a[i].first, b[j].first);
    const auto hi = std::min(a[i].second, b[j].second);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second) ++i; else ++j;
  }
  return out;
}

IndexRanges subtract_ranges(const IndexRanges& a, const IndexRanges& b) {
  IndexRanges out;
  std::size_t j = 0;
  for (auto [lo, hi] : a) {
    while (j < b.size() && b[j].second < lo) ++j;
    std::size_t k = j;
    while (lo <= hi && k < b.size() && b[k].first <= hi) {
      if (b[k].first > lo) out.emplace_back(lo, b[k].first - 1);
      lo = std::max(lo, b[k].second + 1);
      ++k;
    }
    if (lo <= hi) out.emplace_back(lo, hi);
  }
  return out;
}

std::int64_t node_count(double length, double h) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(length / h - 1e-9)));
}

void check_mesh(const ShiftSpec& shifts, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature mesh must be positive", {{"quad_mesh", h}});
  }
  if (shifts.plus.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "a polyvariogram needs at least one plus shift");
  }
  double smallest = 0.0;
  for (const auto* list : {&shifts.plus, &shifts.minus}) {
    for (const Vec2 s : *list) {
      const double n = norm(s);
      if (n > 0.0 && (smallest == 0.0 || n < smallest)) smallest = n;
    }
  }
  if (smallest > 0.0 && h > smallest / 8.0 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature mesh too coarse for the shifts",
                {{"quad_mesh", h}, {"smallest_shift", smallest}});
  }
}

std::uint64_t count_by_spans(const IndicatorSet& set, const ShiftSpec& shifts, double h,
                             const Rect& domain) {
  const std::int64_t nx = node_count(domain.width(), h);
  const std::int64_t ny = node_count(domain.height(), h);
  IntervalList spans;
  IndexRanges ranges, acc;
  std::uint64_t total = 0;
  for (std::int64_t j = 0; j < ny; ++j) {
    const double y = domain.y0 + (static_cast<double>(j) + 0.5) * h;
    bool first = true;
    for (const Vec2 s : shifts.plus) {
      set.row_spans(y - s.y, spans);
      to_index_ranges(spans, s.x, domain.x0, h, nx, ranges);
      acc = first ? ranges : intersect_ranges(acc, ranges);
      first = false;
      if (acc.empty()) break;
    }
    for (const Vec2 s : shifts.minus) {
      if (acc.empty()) break;
      set.row_spans(y - s.y, spans);
      to_index_ranges(spans, s.x, domain.x0, h, nx, ranges);
      acc = subtract_ranges(acc, ranges);
    }
    for (auto [lo, hi] : acc) total += static_cast<std::uint64_t>(hi - lo + 1);
  }
  return total;
}

std::uint64_t count_pointwise(const IndicatorSet& set, const ShiftSpec& shifts, double h,
                              const Rect& domain) {
  const std::int64_t nx = node_count(domain.width(), h);
  const std::int64_t ny = node_count(domain.height(), h);
  std::uint64_t total = 0;
  for (std::int64_t j = 0; j < ny; ++j) {
    const double y = domain.y0 + (static_cast<double>(j) + 0.5) * h;
    for (std::int64_t i = 0; i < nx; ++i) {
      const Vec2 p{domain.x0 + (static_cast<double>(i) + 0.5) * h, y};
      bool in = true;
      for (const Vec2 s : shifts.plus) {
        if (!set.contains(p - s)) { in = false; break; }
      }
      if (!in) continue;
      for (const Vec2 s : shifts.minus) {
        if (set.contains(p - s)) { in = false; break; }
      }
      total += in ? 1u : 0u;
    }
  }
  return total;
}

// Where the intersection of the plus translates can be non-empty.
std::optional<Rect> support(const IndicatorSet& set, const ShiftSpec& shifts) {
  Rect r = set.bounding_box().translated(shifts.plus.front());
  for (const Vec2 s : shifts.plus) {
    const Rect t = set.bounding_box().translated(s);
    r = {std::max(r.x0, t.x0), std::min(r.x1, t.x1), std::max(r.y0, t.y0), std::min(r.y1, t.y1)};
    if (r.x0 > r.x1 || r.y0 > r.y1) return std::nullopt;
  }
  return r;
}

}  // namespace

std::uint64_t discrete_polyvariogram(const BitGrid& grid, const ShiftSpec& shifts) {
  if (shifts.plus.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "a polyvariogram needs at least one plus shift");
  }
  const double eps = grid.lattice().epsilon();
  std::vector<Offset> plus, minus;
  for (const Vec2 s : shifts.plus) plus.push_back(to_offset(s, eps));
  for (const Vec2 s : shifts.minus) minus.push_back(to_offset(s, eps));

  // Output points are p = q + plus[0] with q on the grid; row j of that
  // window reads row j + d0 - d of each shifted copy.
  const Offset d0 = plus.front();
  const int nx = grid.nx();
  const std::size_t nwords = (static_cast<std::size_t>(nx) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> plus_rows(plus.size(), std::vector<std::uint64_t>(nwords));
  std::vector<std::vector<std::uint64_t>> minus_rows(minus.size(), std::vector<std::uint64_t>(nwords));
  std::vector<const std::uint64_t*> plus_ptr, minus_ptr;
  for (auto& r : plus_rows) plus_ptr.push_back(r.data());
  for (auto& r : minus_rows) minus_ptr.push_back(r.data());

  const auto& k = simd::active();
  std::uint64_t total = 0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (std::size_t s = 0; s < plus.size(); ++s) {
      grid.extract_row(j + d0.dj - plus[s].dj, d0.di - plus[s].di, nx, plus_rows[s]);
    }
    for (std::size_t s = 0; s < minus.size(); ++s) {
      grid.extract_row(j + d0.dj - minus[s].dj, d0.di - minus[s].di, nx, minus_rows[s]);
    }
    total += k.and_andnot_popcount(plus_ptr.data(), plus_ptr.size(), minus_ptr.data(),
                                   minus_ptr.size(), nwords);
  }
  return total;
}

double continuous_polyvariogram(const IndicatorSet& set, const ShiftSpec& shifts, double quad_mesh,
                                const Rect& domain, QuadratureRoute route) {
  check_mesh(shifts, quad_mesh);
  if (!domain.valid()) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature domain is empty");
  }
  if (const auto sup = support(set, shifts)) {
    const double slack = 1e-12 * std::max(1.0, std::abs(domain.x1) + std::abs(domain.y1));
    if (sup->x0 < domain.x0 - slack || sup->x1 > domain.x1 + slack ||
        sup->y0 < domain.y0 - slack || sup->y1 > domain.y1 + slack) {
      throw Error(ErrorKind::kInvalidArgument, "quadrature domain does not cover the shifted set",
                  {{"domain", {domain.x0, domain.x1, domain.y0, domain.y1}},
                   {"support", {sup->x0, sup->x1, sup->y0, sup->y1}}});
    }
  }
  bool spans = set.has_row_spans();
  if (route == QuadratureRoute::kPointwise) spans = false;
  if (route == QuadratureRoute::kRowSpans && !spans) {
    throw Error(ErrorKind::kInvalidArgument, "set does not expose row spans");
  }
  const std::uint64_t n = spans ? count_by_spans(set, shifts, quad_mesh, domain)
                                : count_pointwise(set, shifts, quad_mesh, domain);
  return static_cast<double>(n) * quad_mesh * quad_mesh;
}

double continuous_polyvariogram(const IndicatorSet& set, const ShiftSpec& shifts, double quad_mesh,
                                QuadratureRoute route) {
  check_mesh(shifts, quad_mesh);
  const auto sup = support(set, shifts);
  if (!sup) return 0.0;
  // Pad by one node so the domain is never degenerate.
  return continuous_polyvariogram(set, shifts, quad_mesh, sup->dilated(quad_mesh), route);
}

double chi_bicovariogram(const IndicatorSet& set, double epsilon, double quad_mesh) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "epsilon must be positive", {{"epsilon", epsilon}});
  }
  const Rect domain = set.bounding_box().dilated(epsilon + quad_mesh);
  const Vec2 e1 = epsilon * kU1;
  const Vec2 e2 = epsilon * kU2;
  const double out = continuous_polyvariogram(set, {{Vec2{}}, {-e1, -e2}}, quad_mesh, domain);
  const double in = continuous_polyvariogram(set, {{e1, e2}, {Vec2{}}}, quad_mesh, domain);
  return (out - in) / (epsilon * epsilon);
}

std::int64_t chi_bicovariogram_discrete(const BitGrid& grid) {
  if (grid.touches_border()) {
    throw Error(ErrorKind::kMarginViolation, "set touches the grid border");
  }
  const double eps = grid.lattice().epsilon();
  const Vec2 e1 = eps * kU1;
  const Vec2 e2 = eps * kU2;
  // X-configurations as polyvariograms anchored at the lower-left point.
  const auto x_set = discrete_polyvariogram(grid, {{Vec2{}, -(e1 + e2)}, {-e1, -e2}});
  const auto x_comp = discrete_polyvariogram(grid, {{-e1, -e2}, {Vec2{}, -(e1 + e2)}});
  if (x_set != 0 || x_comp != 0) {
    throw Error(ErrorKind::kNotAdmissible, "grid contains X-configurations",
                {{"phi_x_set", x_set}, {"phi_x_complement", x_comp}});
  }
  const auto out = discrete_polyvariogram(grid, {{Vec2{}}, {-e1, -e2}});
  const auto in = discrete_polyvariogram(grid, {{e1, e2}, {Vec2{}}});
  return static_cast<std::int64_t>(out) - static_cast<std::int64_t>(in);
}

PerimeterEstimate estimate_perimeter(const IndicatorSet& set, Vec2 direction,
                                     const std::vector<double>& epsilons, double quad_mesh) {
  if (epsilons.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "perimeter estimate needs at least two epsilons");
  }
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0) || (k > 0 && !(epsilons[k] < epsilons[k - 1]))) {
      throw Error(ErrorKind::kInvalidArgument, "epsilons must be positive and decreasing");
    }
  }
  const double len = norm(direction);
  if (!(len > 0.0)) throw Error(ErrorKind::kInvalidArgument, "direction must be non-zero");
  const Vec2 u = (1.0 / len) * direction;

  PerimeterEstimate est;
  est.direction = u;
  est.epsilons = epsilons;
  const Rect domain = set.bounding_box().dilated(quad_mesh);
  for (const double e : epsilons) {
    const double v = continuous_polyvariogram(set, {{Vec2{}}, {e * u}}, quad_mesh, domain);
    est.values.push_back(2.0 * v / e);
  }
  const std::size_t n = epsilons.size();
  const double e1 = epsilons[n - 2], e2 = epsilons[n - 1];
  const double v1 = est.values[n - 2], v2 = est.values[n - 1];
  est.extrapolated = std::max(0.0, v2 - (v1 - v2) * e2 / (e1 - e2));
  return est;
}

PerimeterSummary summarize_perimeter(const IndicatorSet& set, const std::vector<double>& epsilons,
                                     double quad_mesh, int num_directions) {
  if (num_directions < 1) {
    throw Error(ErrorKind::kInvalidArgument, "need at least one direction",
                {{"num_directions", num_directions}});
  }
  PerimeterSummary out;
  out.along_u1 = estimate_perimeter(set, kU1, epsilons, quad_mesh);
  out.along_u2 = estimate_perimeter(set, kU2, epsilons, quad_mesh);
  out.per_u1 = out.along_u1.extrapolated;
  out.per_u2 = out.along_u2.extrapolated;
  out.per_infinity = out.per_u1 + out.per_u2;

  const double step = 2.0 * std::numbers::pi / num_directions;
  double sum = 0.0;
  for (int k = 0; k < num_directions; ++k) {
    const double t = step * k;
    out.directions.push_back(estimate_perimeter(set, {std::cos(t), std::sin(t)}, epsilons, quad_mesh));
    sum += out.directions.back().extrapolated;
  }
  out.per = 0.25 * step * sum;
  return out;
}

}  // namespace eulergram::variogram

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

#include "eulergram/lattice.hpp"

#include <algorithm>
#include <memory>
#include <bit>
#include <cmath>

#include "eulergram/error.hpp"
#include "eulergram/simd.hpp"

namespace eulergram::lattice {

Lattice::Lattice(double epsilon, Vec2 origin, int nx, int ny)
    : epsilon_(epsilon), origin_(origin), nx_(nx), ny_(ny) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon) || nx < 1 || ny < 1) {
    throw Error(ErrorKind::kInvalidArgument, "lattice needs epsilon > 0 and nx, ny >= 1",
                {{"epsilon", epsilon}, {"nx", nx}, {"ny", ny}});
  }
}

Lattice Lattice::covering(const Rect& box, double epsilon, int margin) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "epsilon must be positive", {{"epsilon", epsilon}});
  }
  const auto i0 = static_cast<long>(std::floor(box.x0 / epsilon)) - margin;
  const auto i1 = static_cast<long>(std::ceil(box.x1 / epsilon)) + margin;
  const auto j0 = static_cast<long>(std::floor(box.y0 / epsilon)) - margin;
  const auto j1 = static_cast<long>(std::ceil(box.y1 / epsilon)) + margin;
  return Lattice(epsilon, {epsilon * static_cast<double>(i0), epsilon * static_cast<double>(j0)},
                 static_cast<int>(i1 - i0 + 1), static_cast<int>(j1 - j0 + 1));
}

Lattice Lattice::centered(double epsilon, Vec2 center, int nx, int ny) {
  return Lattice(epsilon,
                 {center.x - epsilon * 0.5 * (nx - 1), center.y - epsilon * 0.5 * (ny - 1)}, nx, ny);
}

BitGrid::BitGrid(Lattice lattice)
    : lattice_(lattice),
      words_per_row_((static_cast<std::size_t>(lattice.nx()) + 63) / 64),
      words_(words_per_row_ * static_cast<std::size_t>(lattice.ny()), 0) {}

std::uint64_t BitGrid::count() const {
  return simd::active().popcount(words_.data(), words_.size());
}

bool BitGrid::touches_border() const {
  const int last_i = nx() - 1;
  const int last_j = ny() - 1;
  const auto row_any = [&](int j) {
    for (std::uint64_t w : row(j))
      if (w) return true;
    return false;
  };
  if (row_any(0) || row_any(last_j)) return true;
  for (int j = 0; j < ny(); ++j)
    if (get(0, j) || get(last_i, j)) return true;
  return false;
}

BitGrid BitGrid::complement() const {
  BitGrid out(lattice_);
  const int tail = nx() & 63;
  const std::uint64_t tail_mask = tail ? (std::uint64_t{1} << tail) - 1 : ~std::uint64_t{0};
  for (int j = 0; j < ny(); ++j) {
    auto src = row(j);
    auto dst = out.row(j);
    for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] = ~src[w];
    dst[words_per_row_ - 1] &= tail_mask;
  }
  return out;
}

void BitGrid::require_same_lattice(const BitGrid& o) const {
  if (!(lattice_ == o.lattice_)) {
    throw Error(ErrorKind::kInvalidArgument, "bitwise operation on grids over different lattices");
  }
}

BitGrid& BitGrid::operator&=(const BitGrid& o) {
  require_same_lattice(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  return *this;
}

BitGrid& BitGrid::operator|=(const BitGrid& o) {
  require_same_lattice(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

BitGrid& BitGrid::operator^=(const BitGrid& o) {
  require_same_lattice(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

namespace {

// Bits [s, s+64) of a row; positions outside [0, 64*nwords) read as zero.
std::uint64_t read64(std::span<const std::uint64_t> row, long s) {
  const long nwords = static_cast<long>(row.size());
  if (s < 0) {
    const long k = -s;
    if (k >= 64) return 0;
    return read64(row, 0) << k;
  }
  const long q = s >> 6;
  const int r = static_cast<int>(s & 63);
  const std::uint64_t lo = q < nwords ? row[q] : 0;
  if (r == 0) return lo;
  const std::uint64_t hi = q + 1 < nwords ? row[q + 1] : 0;
  return (lo >> r) | (hi << (64 - r));
}

}  // namespace

void BitGrid::extract_row(int j, int first, int nbits, std::span<std::uint64_t> out) const {
  const std::size_t nout = (static_cast<std::size_t>(nbits) + 63) / 64;
  if (j < 0 || j >= ny()) {
    std::fill(out.begin(), out.begin() + static_cast<long>(nout), 0);
    return;
  }
  const auto src = row(j);
  for (std::size_t w = 0; w < nout; ++w) out[w] = read64(src, first + 64L * static_cast<long>(w));
  const int tail = nbits & 63;
  if (tail) out[nout - 1] &= (std::uint64_t{1} << tail) - 1;
}

BitGrid BitGrid::shifted(int di, int dj) const {
  BitGrid out(lattice_);
  for (int j = 0; j < ny(); ++j) extract_row(j - dj, -di, nx(), out.row(j));
  return out;
}

IndicatorSet::IndicatorSet(Predicate contains, Rect bounding_box,
                           std::optional<double> regularity_radius)
    : contains_(std::move(contains)), bbox_(bounding_box), rho_(regularity_radius) {}

IndicatorSet& IndicatorSet::with_row_spans(RowSpans spans) {
  spans_ = std::move(spans);
  return *this;
}

IndicatorSet& IndicatorSet::with_normal(NormalFn normal) {
  normal_ = std::move(normal);
  return *this;
}

IndicatorSet& IndicatorSet::with_signed_distance(DistanceFn distance) {
  distance_ = std::move(distance);
  return *this;
}

IndicatorSet empty_set() {
  IndicatorSet s([](Vec2) { return false; }, Rect{0.0, 0.0, 0.0, 0.0});
  s.with_row_spans([](double, IntervalList& out) { out.clear(); });
  return s;
}

IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return out;
}

IntervalList unite(const IntervalList& a, const IntervalList& b) {
  IntervalList all;
  all.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all),
             [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  IntervalList out;
  for (const Interval& iv : all) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

IndicatorSet intersect(const IndicatorSet& a_in, const IndicatorSet& b_in) {
  const Rect& ba = a_in.bounding_box();
  const Rect& bb = b_in.bounding_box();
  Rect box{std::max(ba.x0, bb.x0), std::min(ba.x1, bb.x1), std::max(ba.y0, bb.y0),
           std::min(ba.y1, bb.y1)};
  if (box.x0 > box.x1 || box.y0 > box.y1) return empty_set();
  // Shared operands: copying closures by value would grow geometrically under nesting.
  auto a = std::make_shared<const IndicatorSet>(a_in);
  auto b = std::make_shared<const IndicatorSet>(b_in);
  IndicatorSet out([a, b](Vec2 p) { return a->contains(p) && b->contains(p); }, box);
  if (a->has_row_spans() && b->has_row_spans()) {
    out.with_row_spans([a, b](double y, IntervalList& spans) {
      IntervalList sa, sb;
      a->row_spans(y, sa);
      b->row_spans(y, sb);
      spans = intersect(sa, sb);
    });
  }
  return out;
}

IndicatorSet unite(const IndicatorSet& a_in, const IndicatorSet& b_in) {
  auto a = std::make_shared<const IndicatorSet>(a_in);
  auto b = std::make_shared<const IndicatorSet>(b_in);
  IndicatorSet out([a, b](Vec2 p) { return a->contains(p) || b->contains(p); },
                   a->bounding_box().united(b->bounding_box()));
  if (a->has_row_spans() && b->has_row_spans()) {
    out.with_row_spans([a, b](double y, IntervalList& spans) {
      IntervalList sa, sb;
      a->row_spans(y, sa);
      b->row_spans(y, sb);
      spans = unite(sa, sb);
    });
  }
  return out;
}

BitGrid digitize(const IndicatorSet& set, const Lattice& lattice, Vec2 offset) {
  BitGrid grid(lattice);
  const Rect& box = set.bounding_box();
  for (int j = 0; j < lattice.ny(); ++j) {
    const double y = lattice.point(0, j).y + offset.y;
    if (y < box.y0 || y > box.y1) continue;
    for (int i = 0; i < lattice.nx(); ++i) {
      const Vec2 p = lattice.point(i, j) + offset;
      if (p.x < box.x0 || p.x > box.x1) continue;
      if (set.contains(p)) grid.set(i, j);
    }
  }
  return grid;
}

double grid_volume(const BitGrid& grid) {
  const double eps = grid.lattice().epsilon();
  return eps * eps * static_cast<double>(grid.count());
}

}  // namespace eulergram::lattice

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
#include <span>
#include <string>
#include <vector>

#include "eulergram/geometry.hpp"

namespace eulergram::lattice {

// The square lattice of mesh epsilon restricted to an nx-by-ny window.
// Grid index (i, j) sits at origin + epsilon * (i, j).
class Lattice {
 public:
  Lattice(double epsilon, Vec2 origin, int nx, int ny);

  // Smallest window of epsilon*Z^2 covering `box` plus `margin` empty cells on
  // every side. Points are integer multiples of epsilon.
  static Lattice covering(const Rect& box, double epsilon, int margin);
  // nx-by-ny window whose middle point is `center`.
  static Lattice centered(double epsilon, Vec2 center, int nx, int ny);

  double epsilon() const { return epsilon_; }
  Vec2 origin() const { return origin_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Vec2 point(int i, int j) const { return {origin_.x + epsilon_ * i, origin_.y + epsilon_ * j}; }
  Rect extent() const { return {origin_.x, point(nx_ - 1, 0).x, origin_.y, point(0, ny_ - 1).y}; }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  double epsilon_;
  Vec2 origin_;
  int nx_;
  int ny_;
};

// Row-major packed bits over a Lattice, 64 columns per word, bit i of a row at
// word i/64, position i%64. Bits past nx in the last word of a row stay zero.
class BitGrid {
 public:
  explicit BitGrid(Lattice lattice);

  const Lattice& lattice() const { return lattice_; }
  int nx() const { return lattice_.nx(); }
  int ny() const { return lattice_.ny(); }
  std::size_t words_per_row() const { return words_per_row_; }

  bool get(int i, int j) const {
    return (words_[row_offset(j) + (i >> 6)] >> (i & 63)) & 1u;
  }
  // Out-of-range reads are background.
  bool get_or_zero(int i, int j) const {
    return i >= 0 && j >= 0 && i < nx() && j < ny() && get(i, j);
  }
  void set(int i, int j, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& w = words_[row_offset(j) + (i >> 6)];
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint64_t> row(int j) const {
    return {words_.data() + row_offset(j), words_per_row_};
  }
  std::span<std::uint64_t> row(int j) { return {words_.data() + row_offset(j), words_per_row_}; }
  std::span<const std::uint64_t> words() const { return words_; }

  std::uint64_t count() const;
  bool any() const { return count() != 0; }
  // True when some set bit lies on the outermost row or column.
  bool touches_border() const;

  BitGrid complement() const;
  BitGrid& operator&=(const BitGrid& o);
  BitGrid& operator|=(const BitGrid& o);
  BitGrid& operator^=(const BitGrid& o);
  friend BitGrid operator&(BitGrid a, const BitGrid& b) { return a &= b; }
  friend BitGrid operator|(BitGrid a, const BitGrid& b) { return a |= b; }
  friend BitGrid operator^(BitGrid a, const BitGrid& b) { return a ^= b; }
  friend bool operator==(const BitGrid& a, const BitGrid& b) {
    return a.lattice_ == b.lattice_ && a.words_ == b.words_;
  }

  // Copy of the bits moved by (di, dj) cells; bits leaving the window drop.
  BitGrid shifted(int di, int dj) const;

  // Zero-padded copy of row j starting at column `first` and spanning
  // `nbits` columns; out-of-grid columns and rows read as zero.
  void extract_row(int j, int first, int nbits, std::span<std::uint64_t> out) const;

 private:
  std::size_t row_offset(int j) const { return static_cast<std::size_t>(j) * words_per_row_; }
  void require_same_lattice(const BitGrid& o) const;

  Lattice lattice_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> words_;
};

// Closed interval [lo, hi] of the real line.
struct Interval {
  double lo;
  double hi;
};

// Sorted disjoint closed intervals; used for exact row-wise set algebra.
using IntervalList = std::vector<Interval>;

// A continuum planar set given by a membership predicate. Optional
// capabilities let shape constructors expose analytic structure:
//   row_spans(y)       the closed x-intervals of {x : (x, y) in set}
//   normal(p)          outward unit normal at a boundary point p
//   signed_distance(p) negative inside, positive outside
class IndicatorSet {
 public:
  using Predicate = std::function<bool(Vec2)>;
  using RowSpans = std::function<void(double, IntervalList&)>;
  using NormalFn = std::function<Vec2(Vec2)>;
  using DistanceFn = std::function<double(Vec2)>;

  IndicatorSet(Predicate contains, Rect bounding_box, std::optional<double> regularity_radius = {});

  bool contains(Vec2 p) const { return contains_(p); }
  const Rect& bounding_box() const { return bbox_; }
  std::optional<double> regularity_radius() const { return rho_; }

  IndicatorSet& with_row_spans(RowSpans spans);
  IndicatorSet& with_normal(NormalFn normal);
  IndicatorSet& with_signed_distance(DistanceFn distance);

  bool has_row_spans() const { return static_cast<bool>(spans_); }
  bool has_normal() const { return static_cast<bool>(normal_); }
  bool has_signed_distance() const { return static_cast<bool>(distance_); }
  void row_spans(double y, IntervalList& out) const { spans_(y, out); }
  Vec2 normal(Vec2 p) const { return normal_(p); }
  double signed_distance(Vec2 p) const { return distance_(p); }

 private:
  Predicate contains_;
  Rect bbox_;
  std::optional<double> rho_;
  RowSpans spans_;
  NormalFn normal_;
  DistanceFn distance_;
};

IndicatorSet empty_set();
IndicatorSet intersect(const IndicatorSet& a, const IndicatorSet& b);
IndicatorSet unite(const IndicatorSet& a, const IndicatorSet& b);

// Interval-list algebra on sorted disjoint lists.
IntervalList intersect(const IntervalList& a, const IntervalList& b);
IntervalList unite(const IntervalList& a, const IntervalList& b);

// Bit (i, j) is set iff the set contains origin + epsilon*(i, j) + offset.
// Lattice points outside the window are not sampled: a set reaching beyond
// the window is silently truncated.
BitGrid digitize(const IndicatorSet& set, const Lattice& lattice, Vec2 offset = {});

// epsilon^2 times the number of set bits.
double grid_volume(const BitGrid& grid);

// Binary PBM (P4) with a JSON sidecar holding the lattice metadata.
std::string encode_pbm(const BitGrid& grid);
void write_pbm(const BitGrid& grid, const std::string& path);
BitGrid read_pbm(const std::string& path, const Lattice& lattice);
std::string lattice_json(const Lattice& lattice);
Lattice lattice_from_json(const std::string& text);
void write_grid(const BitGrid& grid, const std::string& pbm_path);
BitGrid read_grid(const std::string& pbm_path);

}  // namespace eulergram::lattice

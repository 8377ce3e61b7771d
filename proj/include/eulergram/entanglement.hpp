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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulergram/lattice.hpp"
#include "eulergram/shapes.hpp"

// Entanglement pairs of a set given by a fine "truth" raster, and the
// component-count bounds they control. The truth set F is the union of the
// closed fine pixels of the raster. Coarse lattice points are the fine points
// whose indices are multiples of k = epsilon / h.
namespace eulergram::entanglement {

enum class PairKind { kInterior, kBoundary };

struct LatticePair {
  // Coarse lattice indices of the two points, ordered (x before y).
  int xi, xj, yi, yj;
  friend bool operator==(const LatticePair&, const LatticePair&) = default;
};

struct PairSet {
  PairKind kind = PairKind::kInterior;
  std::vector<LatticePair> pairs;
  std::size_t size() const { return pairs.size(); }
};

// Fine truth raster and the coarse lattice drawn from it.
class Resolution {
 public:
  // Throws MeshMismatch unless epsilon / h is an integer >= 4.
  Resolution(const lattice::BitGrid& truth, double coarse_epsilon);

  const lattice::BitGrid& truth() const { return *truth_; }
  int k() const { return k_; }
  double epsilon() const { return epsilon_; }
  const lattice::Lattice& coarse() const { return coarse_; }
  Vec2 point(int ci, int cj) const { return coarse_.point(ci, cj); }
  // Gauss digitization of F on the coarse lattice.
  lattice::BitGrid digitized() const;

 private:
  const lattice::BitGrid* truth_;
  int k_;
  double epsilon_;
  lattice::Lattice coarse_;
};

// Pairs {x, y} of coarse neighbours off F whose square P_{x,y} carries an
// 8-connected fine path of F between the two arcs of its boundary.
// `phase` = false detects the pairs of the complement instead.
PairSet detect_interior_pairs(const lattice::BitGrid& truth, double coarse_epsilon,
                              bool phase = true);
// Pairs on one row or column of [W cap F], near the same edge of W, with every
// point strictly between them off F but within epsilon of F.
PairSet detect_boundary_pairs(const lattice::BitGrid& truth, double coarse_epsilon,
                              const shapes::PolyRectangle& window, bool phase = true);

struct BoundCheck {
  std::string name;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds = true;
};

struct BoundReport {
  std::int64_t num_components_digitized = 0;
  std::int64_t num_components_truth = 0;
  std::int64_t n_interior = 0;
  std::int64_t n_boundary = 0;
  std::int64_t corners = 0;
  std::int64_t bound_rhs = 0;
  bool holds = true;
  std::int64_t chi_digitized = 0;
  // The plain bound and, with a window, the window and Euler bounds.
  std::vector<BoundCheck> checks;
  bool all_hold() const;
};

// Throws MeshMismatch, and MarginViolation when F comes within epsilon of
// the raster border.
BoundReport verify_bounds(const lattice::BitGrid& truth, double coarse_epsilon,
                          const std::optional<shapes::PolyRectangle>& window = std::nullopt);

nlohmann::json to_json(const BoundReport& r);

// Randomized stress fixture: a union of small discs or a thresholded sum of
// Gaussian bumps rasterized at mesh h, with a random polyrectangle window.
// The raster keeps an empty margin of max_ratio + 2 cells.
struct RandomTruth {
  lattice::BitGrid truth;
  shapes::PolyRectangle window;
  std::string kind;  // "discs" or "bumps"
};

RandomTruth random_truth(std::uint64_t seed, double h, int max_ratio, int interior_cells = 192);
// CSV rows x1,y1,x2,y2,kind with point coordinates.
std::string pairs_csv(const Resolution& res, const std::vector<const PairSet*>& sets,
                      bool header = true);

}  // namespace eulergram::entanglement

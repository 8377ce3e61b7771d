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
#include <vector>

#include "eulergram/geometry.hpp"
#include "eulergram/lattice.hpp"

namespace eulergram::variogram {

// Translation vectors of a polyvariogram: the intersection of the translates
// A + x for x in `plus`, with the complements of A + y for y in `minus`.
struct ShiftSpec {
  std::vector<Vec2> plus;
  std::vector<Vec2> minus;
};

// Number of lattice points in the shifted intersection. Every shift must be a
// lattice vector (NonLatticeShift otherwise) and `plus` must be non-empty.
// Points outside the grid window count as background, so no margin is needed.
std::uint64_t discrete_polyvariogram(const lattice::BitGrid& grid, const ShiftSpec& shifts);

enum class QuadratureRoute {
  kAuto,       // row spans when the set exposes them, pointwise otherwise
  kRowSpans,   // exact interval algebra per quadrature row
  kPointwise,  // one predicate call per node and shift
};

// Midpoint rule on the mesh-h grid over `domain`: h^2 times the number of
// nodes in the shifted intersection. Error is O(h * total perimeter).
double continuous_polyvariogram(const lattice::IndicatorSet& set, const ShiftSpec& shifts,
                                double quad_mesh, const Rect& domain,
                                QuadratureRoute route = QuadratureRoute::kAuto);
// Same, over the smallest domain where the intersection can be non-empty.
double continuous_polyvariogram(const lattice::IndicatorSet& set, const ShiftSpec& shifts,
                                double quad_mesh,
                                QuadratureRoute route = QuadratureRoute::kAuto);

// eps^-2 (vol{x in F, x+e*u1 not in F, x+e*u2 not in F}
//         - vol{x not in F, x-e*u1 in F, x-e*u2 in F}).
double chi_bicovariogram(const lattice::IndicatorSet& set, double epsilon, double quad_mesh);

// The same identity on the lattice, computed only through
// discrete_polyvariogram. Throws NotAdmissible (and MarginViolation).
std::int64_t chi_bicovariogram_discrete(const lattice::BitGrid& grid);

struct PerimeterEstimate {
  Vec2 direction;
  std::vector<double> epsilons;  // decreasing
  std::vector<double> values;    // 2 eps^-1 vol(A \ (A + eps u))
  double extrapolated = 0.0;     // first-order Richardson on the last two values
};

PerimeterEstimate estimate_perimeter(const lattice::IndicatorSet& set, Vec2 direction,
                                     const std::vector<double>& epsilons, double quad_mesh);

struct PerimeterSummary {
  PerimeterEstimate along_u1;
  PerimeterEstimate along_u2;
  std::vector<PerimeterEstimate> directions;  // equispaced on the circle
  double per_u1 = 0.0;
  double per_u2 = 0.0;
  double per_infinity = 0.0;  // per_u1 + per_u2
  double per = 0.0;           // (1/4) * (2 pi / n) * sum over directions
};

PerimeterSummary summarize_perimeter(const lattice::IndicatorSet& set,
                                     const std::vector<double>& epsilons, double quad_mesh,
                                     int num_directions = 64);

}  // namespace eulergram::variogram

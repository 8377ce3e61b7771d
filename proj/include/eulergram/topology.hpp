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

#include "eulergram/lattice.hpp"

namespace eulergram::topology {

// Pattern counts of the 2x2 windows of a grid embedded in an empty plane.
struct ConfigCounts {
  std::uint64_t phi_out = 0;           // x in M, x+e1 and x+e2 not in M
  std::uint64_t phi_in = 0;            // x not in M, x-e1 and x-e2 in M
  std::uint64_t phi_x_set = 0;         // diagonal (1,0,0,1)
  std::uint64_t phi_x_complement = 0;  // anti-diagonal (0,1,1,0)

  bool admissible() const { return phi_x_set == 0 && phi_x_complement == 0; }
  friend bool operator==(const ConfigCounts&, const ConfigCounts&) = default;
};

// Throws MarginViolation when a set bit lies on the outermost row or column.
ConfigCounts config_counts(const lattice::BitGrid& grid);

// phi_out - phi_in. Throws NotAdmissible when an X-configuration is present.
std::int64_t chi_local(const lattice::BitGrid& grid);

struct CellCounts {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t faces = 0;
  std::int64_t chi() const {
    return static_cast<std::int64_t>(vertices) - static_cast<std::int64_t>(edges) +
           static_cast<std::int64_t>(faces);
  }
};

// Set bits, 4-adjacencies, and fully set 2x2 windows of the grid graph.
CellCounts cell_counts(const lattice::BitGrid& grid);
// V - E + F of the grid graph; valid on any grid.
std::int64_t chi_vef(const lattice::BitGrid& grid);

enum class Which { kSet, kComplement };

struct ComponentLabeling {
  Which which = Which::kSet;
  // One entry per grid cell (row-major); -1 off the labeled phase. Labels are
  // 0..n-1 in raster order of first appearance.
  std::vector<std::int32_t> labels;
  int num_set_components = 0;
  // Complement components not connected to the region outside the grid.
  int num_complement_bounded_components = 0;

  std::int32_t label(const lattice::BitGrid& grid, int i, int j) const {
    return labels[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.nx()) +
                  static_cast<std::size_t>(i)];
  }
};

// 4-connected labeling of the set or of its complement. Labeling the
// complement requires the one-cell empty margin (MarginViolation otherwise).
ComponentLabeling label_components(const lattice::BitGrid& grid, Which which);

// #components - #bounded holes, via labeling.
std::int64_t chi_components(const lattice::BitGrid& grid);

}  // namespace eulergram::topology

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

#include "eulergram/topology.hpp"

#include <vector>

#include "eulergram/detail/components.hpp"
#include "eulergram/error.hpp"
#include "eulergram/simd.hpp"

namespace eulergram::detail {

namespace {

struct Run {
  int start;
  int end;  // inclusive
  std::int32_t id;
};

}  // namespace

Components label_cells(const lattice::BitGrid& grid, bool phase, int connectivity) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int reach = connectivity == 8 ? 1 : 0;
  DisjointSets sets;
  std::vector<std::vector<Run>> rows(static_cast<std::size_t>(ny));

  for (int j = 0; j < ny; ++j) {
    auto& runs = rows[static_cast<std::size_t>(j)];
    int i = 0;
    while (i < nx) {
      if (grid.get(i, j) != phase) {
        ++i;
        continue;
      }
      const int start = i;
      while (i < nx && grid.get(i, j) == phase) ++i;
      runs.push_back({start, i - 1, sets.add()});
    }
    if (j == 0) continue;
    const auto& prev = rows[static_cast<std::size_t>(j - 1)];
    std::size_t p = 0;
    for (const Run& r : runs) {
      while (p < prev.size() && prev[p].end + reach < r.start) ++p;
      for (std::size_t q = p; q < prev.size() && prev[q].start <= r.end + reach; ++q) {
        sets.unite(r.id, prev[q].id);
      }
    }
  }

  Components out;
  out.labels.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), -1);
  std::vector<std::int32_t> root_label(sets.size(), -1);
  for (int j = 0; j < ny; ++j) {
    for (const Run& r : rows[static_cast<std::size_t>(j)]) {
      const auto root = static_cast<std::size_t>(sets.find(r.id));
      if (root_label[root] < 0) {
        root_label[root] = out.count++;
        out.touches_border.push_back(false);
      }
      const std::int32_t label = root_label[root];
      if (j == 0 || j == ny - 1 || r.start == 0 || r.end == nx - 1) {
        out.touches_border[static_cast<std::size_t>(label)] = true;
      }
      const std::size_t base = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
      for (int i = r.start; i <= r.end; ++i) out.labels[base + static_cast<std::size_t>(i)] = label;
    }
  }
  return out;
}

}  // namespace eulergram::detail

namespace eulergram::topology {

using lattice::BitGrid;

namespace {

void require_margin(const BitGrid& grid) {
  if (grid.touches_border()) {
    throw Error(ErrorKind::kMarginViolation,
                "set touches the grid border; embed it with a one-cell empty margin",
                {{"nx", grid.nx()}, {"ny", grid.ny()}});
  }
}

// Walks the row pairs (j, j+1) for j in [0, last_row], feeding the kernel
// with one-column-shifted copies. Rows past the grid read as zero.
simd::QuadCounts sweep_quads(const BitGrid& grid, int last_row) {
  const auto& k = simd::active();
  const std::size_t nw = grid.words_per_row();
  std::vector<std::uint64_t> zero(nw, 0), lo_right(nw), hi_right(nw);
  simd::QuadCounts total;
  if (last_row < 0) return total;
  simd::shift_down_one(grid.row(0), lo_right);
  for (int j = 0; j <= last_row; ++j) {
    const std::uint64_t* lo = grid.row(j).data();
    const std::uint64_t* hi = zero.data();
    if (j + 1 < grid.ny()) {
      hi = grid.row(j + 1).data();
      simd::shift_down_one(grid.row(j + 1), hi_right);
    } else {
      std::fill(hi_right.begin(), hi_right.end(), 0);
    }
    total += k.quad_counts(lo, lo_right.data(), hi, hi_right.data(), nw);
    std::swap(lo_right, hi_right);
  }
  return total;
}

}  // namespace

ConfigCounts config_counts(const BitGrid& grid) {
  require_margin(grid);
  // With an empty border, windows hanging off the grid see only zeros and
  // match none of the patterns.
  const simd::QuadCounts q = sweep_quads(grid, grid.ny() - 2);
  return {q.out, q.in, q.x_set, q.x_comp};
}

std::int64_t chi_local(const BitGrid& grid) {
  const ConfigCounts c = config_counts(grid);
  if (!c.admissible()) {
    throw Error(ErrorKind::kNotAdmissible, "X-configuration present; digitization too coarse",
                {{"phi_x_set", c.phi_x_set}, {"phi_x_complement", c.phi_x_complement}});
  }
  return static_cast<std::int64_t>(c.phi_out) - static_cast<std::int64_t>(c.phi_in);
}

CellCounts cell_counts(const BitGrid& grid) {
  const simd::QuadCounts q = sweep_quads(grid, grid.ny() - 1);
  return {grid.count(), q.h_edges + q.v_edges, q.full};
}

std::int64_t chi_vef(const BitGrid& grid) { return cell_counts(grid).chi(); }

ComponentLabeling label_components(const BitGrid& grid, Which which) {
  if (which == Which::kComplement) require_margin(grid);
  const detail::Components set = detail::label_cells(grid, true, 4);
  const detail::Components comp = detail::label_cells(grid, false, 4);
  ComponentLabeling out;
  out.which = which;
  out.num_set_components = set.count;
  for (bool border : comp.touches_border) {
    if (!border) ++out.num_complement_bounded_components;
  }
  out.labels = which == Which::kSet ? set.labels : comp.labels;
  return out;
}

std::int64_t chi_components(const BitGrid& grid) {
  const ComponentLabeling l = label_components(grid, Which::kSet);
  return l.num_set_components - l.num_complement_bounded_components;
}

}  // namespace eulergram::topology

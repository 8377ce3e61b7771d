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

#include <cmath>
#include <limits>

#include "eulergram/error.hpp"
#include "eulergram/shapes.hpp"

namespace eulergram::shapes {
namespace {

using lattice::BitGrid;
using lattice::Lattice;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower envelope of parabolas (Felzenszwalb and Huttenlocher), in place.
void edt_1d(double* f, std::size_t n, std::size_t stride, std::vector<double>& d,
            std::vector<int>& v, std::vector<double>& z) {
  d.resize(n);
  v.resize(n);
  z.resize(n + 1);
  int k = -1;
  for (std::size_t q = 0; q < n; ++q) {
    const double fq = f[q * stride];
    if (fq == kInf) continue;
    const auto qd = static_cast<double>(q);
    double s = -kInf;
    while (k >= 0) {
      const auto vk = static_cast<double>(v[static_cast<std::size_t>(k)]);
      s = ((fq + qd * qd) - (f[static_cast<std::size_t>(v[static_cast<std::size_t>(k)]) * stride] + vk * vk)) /
          (2.0 * (qd - vk));
      if (s > z[static_cast<std::size_t>(k)]) break;
      --k;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = static_cast<int>(q);
    z[static_cast<std::size_t>(k)] = k == 0 ? -kInf : s;
    z[static_cast<std::size_t>(k) + 1] = kInf;
  }
  if (k < 0) return;  // whole line at infinity
  int j = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto qd = static_cast<double>(q);
    while (z[static_cast<std::size_t>(j) + 1] < qd) ++j;
    const auto vj = static_cast<double>(v[static_cast<std::size_t>(j)]);
    d[q] = (qd - vj) * (qd - vj) + f[static_cast<std::size_t>(v[static_cast<std::size_t>(j)]) * stride];
  }
  for (std::size_t q = 0; q < n; ++q) f[q * stride] = d[q];
}

BitGrid dilate(const BitGrid& grid, double radius_cells) {
  const auto dist = squared_distance_transform(grid);
  const double r2 = radius_cells * radius_cells * (1.0 + 1e-12);
  BitGrid out(grid.lattice());
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (dist[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.nx()) +
               static_cast<std::size_t>(i)] <= r2) {
        out.set(i, j);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> squared_distance_transform(const BitGrid& grid) {
  const auto nx = static_cast<std::size_t>(grid.nx());
  const auto ny = static_cast<std::size_t>(grid.ny());
  std::vector<double> f(nx * ny, kInf);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (grid.get(static_cast<int>(i), static_cast<int>(j))) f[j * nx + i] = 0.0;
    }
  }
  std::vector<double> d, z;
  std::vector<int> v;
  for (std::size_t i = 0; i < nx; ++i) edt_1d(f.data() + i, ny, nx, d, v, z);
  for (std::size_t j = 0; j < ny; ++j) edt_1d(f.data() + j * nx, nx, 1, d, v, z);
  return f;
}

MorphologyResult morph(const BitGrid& grid, double radius, MorphOp op) {
  const double eps = grid.lattice().epsilon();
  if (!(radius >= eps * (1.0 - 1e-12))) {
    throw Error(ErrorKind::kRadiusTooSmall, "radius is below the lattice mesh",
                {{"radius", radius}, {"epsilon", eps}});
  }
  const double cells = radius / eps;
  if (op == MorphOp::kDilate) return {dilate(grid, cells), radius, op};

  // Erosion by duality on a grid padded far enough that the outside of the
  // original window (background, hence foreground of the complement) is seen.
  const int pad = static_cast<int>(std::ceil(cells - 1e-12));
  const Lattice& lat = grid.lattice();
  const Lattice big(eps, lat.point(-pad, -pad), lat.nx() + 2 * pad, lat.ny() + 2 * pad);
  BitGrid padded(big);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (grid.get(i, j)) padded.set(i + pad, j + pad);
    }
  }
  const BitGrid eroded = dilate(padded.complement(), cells).complement();
  BitGrid out(lat);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (eroded.get(i + pad, j + pad)) out.set(i, j);
    }
  }
  return {out, radius, op};
}

}  // namespace eulergram::shapes

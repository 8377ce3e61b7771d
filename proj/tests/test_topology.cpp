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

#include <doctest.h>

#include <chrono>
#include <random>

#include "eulergram/error.hpp"
#include "eulergram/topology.hpp"
#include "oracles.hpp"

using namespace eulergram;
using oracle::Mask;

namespace {

Mask ring3() {
  return oracle::parse({".....", ".###.", ".#.#.", ".###.", "....."});
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("config counts on small fixtures") {
  Mask one(3, 3);
  one.set(1, 1);
  auto c = topology::config_counts(oracle::to_grid(one));
  CHECK(c.phi_out == 1);
  CHECK(c.phi_in == 0);
  CHECK(c.phi_x_set == 0);

  Mask diag(4, 4);
  diag.set(1, 1);
  diag.set(2, 2);
  CHECK(topology::config_counts(oracle::to_grid(diag)).phi_x_set == 1);

  c = topology::config_counts(oracle::to_grid(ring3()));
  CHECK(c.phi_out == 1);
  CHECK(c.phi_in == 1);
  CHECK(c.phi_x_set == 0);
  CHECK(c.phi_x_complement == 0);
}

TEST_CASE("chi on small fixtures") {
  Mask one(3, 3);
  one.set(1, 1);
  CHECK(topology::chi_local(oracle::to_grid(one)) == 1);
  CHECK(topology::chi_vef(oracle::to_grid(one)) == 1);
  CHECK(topology::chi_local(oracle::to_grid(ring3())) == 0);
  CHECK(topology::chi_vef(oracle::to_grid(ring3())) == 0);

  const auto blocks = oracle::parse({"......", ".##.##", ".##.##", "......"});
  Mask padded(8, 6);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 6; ++i) padded.set(i + 1, j + 1, blocks.at(i, j));
  CHECK(topology::chi_local(oracle::to_grid(padded)) == 2);
  CHECK(oracle::chi_bfs(padded) == 2);

  Mask block(4, 4);
  for (int j = 1; j < 3; ++j)
    for (int i = 1; i < 3; ++i) block.set(i, j);
  const auto cells = topology::cell_counts(oracle::to_grid(block));
  CHECK(cells.vertices == 4);
  CHECK(cells.edges == 4);
  CHECK(cells.faces == 1);
  const auto rc = topology::cell_counts(oracle::to_grid(ring3()));
  CHECK(rc.vertices == 8);
  CHECK(rc.edges == 8);
  CHECK(rc.faces == 0);
}

TEST_CASE("labeling ring and empty grid") {
  const auto g = oracle::to_grid(ring3());
  CHECK(topology::label_components(g, topology::Which::kSet).num_set_components == 1);
  CHECK(topology::label_components(g, topology::Which::kComplement).num_complement_bounded_components == 1);
  CHECK(topology::label_components(oracle::to_grid(Mask(4, 4)), topology::Which::kSet).num_set_components == 0);
}

TEST_CASE("labels are constant on components and distinct across them") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto m = oracle::random_mask(rng, 40, 30, 0.45);
    const auto g = oracle::to_grid(m);
    const auto lab = topology::label_components(g, topology::Which::kSet);
    CHECK(lab.num_set_components == oracle::flood(m, true, 4).components);
    bool ok = true;
    for (int j = 0; j < m.ny; ++j) {
      for (int i = 0; i + 1 < m.nx; ++i) {
        if (m.at(i, j) && m.at(i + 1, j)) ok = ok && lab.label(g, i, j) == lab.label(g, i + 1, j);
        if (j + 1 < m.ny && m.at(i, j) && m.at(i, j + 1)) ok = ok && lab.label(g, i, j) == lab.label(g, i, j + 1);
      }
    }
    CHECK(ok);
    const auto holes = topology::label_components(g, topology::Which::kComplement);
    CHECK(holes.num_complement_bounded_components == oracle::flood(m, false, 4).bounded);
  }
}

TEST_CASE("set bits on the border raise MarginViolation") {
  Mask m(3, 3);
  m.set(0, 1);
  const auto g = oracle::to_grid(m);
  CHECK(kind_of([&] { topology::config_counts(g); }) == ErrorKind::kMarginViolation);
  CHECK(kind_of([&] { topology::label_components(g, topology::Which::kComplement); }) ==
        ErrorKind::kMarginViolation);
}

TEST_CASE("X configurations raise NotAdmissible") {
  Mask diag(4, 4);
  diag.set(1, 1);
  diag.set(2, 2);
  CHECK(kind_of([&] { topology::chi_local(oracle::to_grid(diag)); }) == ErrorKind::kNotAdmissible);
  Mask anti(4, 4);
  anti.set(2, 1);
  anti.set(1, 2);
  CHECK(topology::config_counts(oracle::to_grid(anti)).phi_x_complement == 1);
}

TEST_CASE("exhaustive 4x4 equivalence") {
  const auto t0 = std::chrono::steady_clock::now();
  int admissible = 0, mismatches = 0;
  for (unsigned bits = 0; bits < 65536; ++bits) {
    Mask m(6, 6);
    for (int b = 0; b < 16; ++b) m.set(1 + b % 4, 1 + b / 4, (bits >> b) & 1u);
    const auto g = oracle::to_grid(m);
    const auto c = topology::config_counts(g);
    const auto q = oracle::quads(m);
    if (c.phi_out != q.out || c.phi_in != q.in || c.phi_x_set != q.x_set || c.phi_x_complement != q.x_comp) {
      ++mismatches;
      continue;
    }
    if (!c.admissible()) continue;
    ++admissible;
    const auto chi = topology::chi_local(g);
    if (chi != topology::chi_vef(g) || chi != oracle::chi_bfs(m) || chi != topology::chi_components(g)) ++mismatches;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(mismatches == 0);
  CHECK(admissible > 10000);
  MESSAGE("admissible masks: " << admissible << ", seconds: " << secs);
}

TEST_CASE("config counts agree with the window oracle on random grids") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const int nx = 3 + static_cast<int>(rng() % 150), ny = 3 + static_cast<int>(rng() % 40);
    const auto m = oracle::random_mask(rng, nx, ny, 0.3 + 0.4 * (t % 3) / 2.0);
    const auto c = topology::config_counts(oracle::to_grid(m));
    const auto q = oracle::quads(m);
    CHECK(c.phi_out == q.out);
    CHECK(c.phi_in == q.in);
    CHECK(c.phi_x_set == q.x_set);
    CHECK(c.phi_x_complement == q.x_comp);
    if (q.x_set + q.x_comp == 0) CHECK(topology::chi_vef(oracle::to_grid(m)) == oracle::chi_bfs(m));
  }
}

TEST_CASE("X counts of a grid match the complement counts of its inverse") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    // Inverting everything but the outer ring keeps the margin empty, and no
    // window straddling the ring can form an X.
    const auto m = oracle::random_mask(rng, 20, 20, 0.5, 2);
    Mask inv(20, 20);
    for (int j = 1; j < 19; ++j)
      for (int i = 1; i < 19; ++i) inv.set(i, j, !m.at(i, j));
    const auto a = topology::config_counts(oracle::to_grid(m));
    const auto b = topology::config_counts(oracle::to_grid(inv));
    CHECK(a.phi_x_set == b.phi_x_complement);
    CHECK(a.phi_x_complement == b.phi_x_set);
  }
}

TEST_CASE("translation leaves every output unchanged") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto m = oracle::random_mask(rng, 24, 24, 0.5, 2);
    Mask s(24, 24);
    for (int j = 0; j + 1 < 24; ++j)
      for (int i = 0; i + 1 < 24; ++i) s.set(i + 1, j + 1, m.at(i, j));
    const auto a = oracle::to_grid(m), b = oracle::to_grid(s);
    CHECK(topology::config_counts(a) == topology::config_counts(b));
    CHECK(topology::chi_vef(a) == topology::chi_vef(b));
    CHECK(topology::label_components(a, topology::Which::kSet).num_set_components ==
          topology::label_components(b, topology::Which::kSet).num_set_components);
  }
}

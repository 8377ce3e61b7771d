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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eulergram/error.hpp"
#include "eulergram/shapes.hpp"
#include "eulergram/topology.hpp"
#include "eulergram/variogram.hpp"
#include "oracles.hpp"

using namespace eulergram;
using variogram::QuadratureRoute;
using variogram::ShiftSpec;

namespace {

struct IShift {
  int di, dj;
};

// Counts lattice points p with p - x in M for every plus x and p - y not in M
// for every minus y, scanning well past the raster.
std::uint64_t brute(const oracle::Mask& m, const std::vector<IShift>& plus, const std::vector<IShift>& minus) {
  std::uint64_t n = 0;
  for (int j = -20; j < m.ny + 20; ++j) {
    for (int i = -20; i < m.nx + 20; ++i) {
      bool in = true;
      for (auto s : plus) in = in && m.at(i - s.di, j - s.dj);
      for (auto s : minus) in = in && !m.at(i - s.di, j - s.dj);
      n += in;
    }
  }
  return n;
}

ShiftSpec spec(const std::vector<IShift>& plus, const std::vector<IShift>& minus, double eps = 1.0) {
  ShiftSpec s;
  for (auto v : plus) s.plus.push_back({v.di * eps, v.dj * eps});
  for (auto v : minus) s.minus.push_back({v.di * eps, v.dj * eps});
  return s;
}

}  // namespace

TEST_CASE("discrete polyvariogram basics") {
  std::mt19937_64 rng(53);
  const auto m = oracle::random_mask(rng, 9, 9, 0.5);
  const auto g = oracle::to_grid(m, 0.5);
  CHECK(variogram::discrete_polyvariogram(g, spec({{0, 0}}, {}, 0.5)) == g.count());

  oracle::Mask one(3, 3);
  one.set(1, 1);
  CHECK(variogram::discrete_polyvariogram(oracle::to_grid(one), spec({{0, 0}}, {{1, 0}, {0, 1}})) == 1);

  ShiftSpec off;
  off.plus = {{0.0, 0.0}, {0.25, 0.0}};
  try {
    variogram::discrete_polyvariogram(g, off);
    FAIL("expected NonLatticeShift");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonLatticeShift);
  }
}

TEST_CASE("discrete polyvariogram matches brute force for random shift lists") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 300; ++t) {
    const int nx = 2 + static_cast<int>(rng() % 90), ny = 2 + static_cast<int>(rng() % 12);
    const auto m = oracle::random_mask(rng, nx, ny, 0.55, 0);
    std::vector<IShift> plus(1 + rng() % 3), minus(rng() % 3);
    for (auto& s : plus) s = {d(rng), d(rng)};
    for (auto& s : minus) s = {d(rng), d(rng)};
    CHECK(variogram::discrete_polyvariogram(oracle::to_grid(m), spec(plus, minus)) == brute(m, plus, minus));
  }
}

TEST_CASE("inclusion-exclusion of the discrete polyvariogram") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 100; ++t) {
    const auto m = oracle::random_mask(rng, 8, 8, 0.5, 0);
    const auto g = oracle::to_grid(m);
    const IShift x{d(rng), d(rng)}, y{d(rng), d(rng)};
    const auto lhs = variogram::discrete_polyvariogram(g, spec({{0, 0}}, {x, y}));
    const auto rhs = static_cast<std::int64_t>(variogram::discrete_polyvariogram(g, spec({{0, 0}}, {}))) -
                     static_cast<std::int64_t>(variogram::discrete_polyvariogram(g, spec({{0, 0}, x}, {}))) -
                     static_cast<std::int64_t>(variogram::discrete_polyvariogram(g, spec({{0, 0}, y}, {}))) +
                     static_cast<std::int64_t>(variogram::discrete_polyvariogram(g, spec({{0, 0}, x, y}, {})));
    CHECK(static_cast<std::int64_t>(lhs) == rhs);
  }
}

TEST_CASE("shift order does not matter") {
  std::mt19937_64 rng(67);
  const auto m = oracle::random_mask(rng, 40, 30, 0.5);
  const auto g = oracle::to_grid(m);
  std::vector<IShift> plus{{0, 0}, {2, -1}, {-3, 1}}, minus{{1, 1}, {0, -2}};
  const auto ref = variogram::discrete_polyvariogram(g, spec(plus, minus));
  for (int t = 0; t < 10; ++t) {
    std::shuffle(plus.begin(), plus.end(), rng);
    std::shuffle(minus.begin(), minus.end(), rng);
    CHECK(variogram::discrete_polyvariogram(g, spec(plus, minus)) == ref);
  }

  const auto disc = shapes::disc({0.1, 0.2}, 0.8);
  ShiftSpec a{{{0, 0}, {0.3, 0.1}}, {{0.0, -0.2}}}, b{{{0.3, 0.1}, {0, 0}}, {{0.0, -0.2}}};
  CHECK(variogram::continuous_polyvariogram(disc, a, 0.002) == variogram::continuous_polyvariogram(disc, b, 0.002));
}

TEST_CASE("continuous polyvariogram examples") {
  const auto disc = shapes::disc({0, 0}, 1.0);
  const double area = variogram::continuous_polyvariogram(disc, {{{0, 0}}, {}}, 1e-3);
  CHECK(std::abs(area - std::numbers::pi) < 0.01 * std::numbers::pi);
  CHECK(variogram::continuous_polyvariogram(disc, {{{0, 0}, {3, 0}}, {}}, 1e-2) == 0.0);

  const auto sq = shapes::make_indicator(shapes::PolyRectangle::single({0, 1, 0, 1}));
  const double slab = variogram::continuous_polyvariogram(sq, {{{0, 0}}, {{0.1, 0}}}, 1e-3);
  CHECK(slab == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("row-span and pointwise quadrature agree") {
  const std::vector<lattice::IndicatorSet> shapes_{
      shapes::disc({0.1, -0.3}, 0.9), shapes::annulus({0, 0}, 0.4, 1.1),
      shapes::make_indicator(shapes::PolyRectangle({{0.0013, 2.0071, 0.0029, 1.0011}, {0.0017, 1.0041, 0.5037, 3.0023}}))};
  // Generic offsets: no edge lands exactly on a node, where the two routes may break ties differently.
  const ShiftSpec s{{{0, 0}, {0.0513, 0.0207}}, {{-0.0411, 0.0}, {0.0, 0.0613}}};
  for (const auto& set : shapes_) {
    const double a = variogram::continuous_polyvariogram(set, s, 0.004, QuadratureRoute::kRowSpans);
    const double b = variogram::continuous_polyvariogram(set, s, 0.004, QuadratureRoute::kPointwise);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("quadrature preconditions") {
  const auto disc = shapes::disc({0, 0}, 1.0);
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIoError;
  };
  CHECK(kind([&] { variogram::continuous_polyvariogram(disc, {{{0, 0}}, {{0.01, 0}}}, 0.01); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind([&] { variogram::continuous_polyvariogram(disc, {{}, {{0.1, 0}}}, 0.001); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind([&] { variogram::continuous_polyvariogram(disc, {{{0, 0}}, {}}, 0.01, Rect{0, 1, 0, 1}); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("discrete bicovariogram chi") {
  oracle::Mask one(3, 3);
  one.set(1, 1);
  CHECK(variogram::chi_bicovariogram_discrete(oracle::to_grid(one)) == 1);
  const auto ring = oracle::parse({".....", ".###.", ".#.#.", ".###.", "....."});
  CHECK(variogram::chi_bicovariogram_discrete(oracle::to_grid(ring)) == 0);

  int checked = 0;
  for (unsigned bits = 0; bits < 65536; ++bits) {
    oracle::Mask m(6, 6);
    for (int b = 0; b < 16; ++b) m.set(1 + b % 4, 1 + b / 4, (bits >> b) & 1u);
    const auto g = oracle::to_grid(m);
    if (!topology::config_counts(g).admissible()) {
      CHECK_THROWS_AS(variogram::chi_bicovariogram_discrete(g), Error);
      continue;
    }
    ++checked;
    if (variogram::chi_bicovariogram_discrete(g) != topology::chi_local(g)) {
      FAIL("mismatch on mask " << bits);
    }
  }
  CHECK(checked == 23858);
}

TEST_CASE("continuum bicovariogram chi on regular fixtures") {
  const double h = 2e-5;
  CHECK(std::abs(variogram::chi_bicovariogram(shapes::disc({0, 0}, 1.0), 0.05, h) - 1.0) <= 0.05);
  const auto two = shapes::union_of({shapes::disc({0, 0}, 1.0), shapes::disc({5, 0}, 1.0)});
  CHECK(std::abs(variogram::chi_bicovariogram(two, 0.05, h) - 2.0) <= 0.1);
  CHECK(std::abs(variogram::chi_bicovariogram(shapes::annulus({0, 0}, 1.0, 2.0), 0.05, h)) <= 0.1);
}

TEST_CASE("bicovariogram chi is stable across the stabilized epsilon range") {
  for (double eps : {0.1, 0.05, 0.025}) {
    CHECK(std::abs(variogram::chi_bicovariogram(shapes::disc({0.01, -0.02}, 1.0), eps, eps * eps / 100) - 1.0) <= 0.05);
  }
}

TEST_CASE("perimeter of a square and a unit-diameter disc") {
  const auto sq = shapes::make_indicator(shapes::PolyRectangle::single({0, 1, 0, 1}));
  const std::vector<double> eps{0.04, 0.02, 0.01};
  const auto s = variogram::summarize_perimeter(sq, eps, 1e-4, 64);
  CHECK(s.per_infinity == doctest::Approx(4.0).epsilon(0.01));
  CHECK(s.per_u1 == doctest::Approx(2.0).epsilon(0.01));

  const auto d = variogram::summarize_perimeter(shapes::disc({0, 0}, 0.5), eps, 1e-4, 64);
  CHECK(d.per_infinity == doctest::Approx(4.0).epsilon(0.01));
  CHECK(d.per == doctest::Approx(std::numbers::pi).epsilon(0.02));
  CHECK(d.directions.size() == 64);
  // The square attains Per == Per_inf, so the lower side needs slack.
  for (const auto& x : {s, d}) {
    CHECK(x.per <= x.per_infinity * 1.01);
    CHECK(x.per_infinity <= std::numbers::sqrt2 * x.per * 1.01);
  }
}

TEST_CASE("directional perimeter is symmetric under u -> -u") {
  const auto set = shapes::make_indicator(shapes::PolyRectangle({{0, 2, 0, 1}, {0, 1, 0.5, 3}}));
  const std::vector<double> eps{0.04, 0.02, 0.01};
  for (double a : {0.0, 0.4, 1.3}) {
    const Vec2 u{std::cos(a), std::sin(a)};
    const auto p = variogram::estimate_perimeter(set, u, eps, 1e-3);
    const auto q = variogram::estimate_perimeter(set, -u, eps, 1e-3);
    CHECK(p.extrapolated == doctest::Approx(q.extrapolated).epsilon(2e-3));
    CHECK(p.values.size() == eps.size());
    CHECK(p.extrapolated >= 0.0);
  }
}

TEST_CASE("Richardson step removes a linear bias") {
  // For a unit square along u at angle t the difference volume is exactly
  // eps(|cos t| + |sin t|) - eps^2 |cos t sin t|, so the raw values carry a
  // linear bias that one extrapolation step cancels.
  const auto sq = shapes::make_indicator(shapes::PolyRectangle::single({0, 1, 0, 1}));
  const double t = 0.6;
  const Vec2 u{std::cos(t), std::sin(t)};
  const double exact = 2.0 * (std::cos(t) + std::sin(t));
  const auto p = variogram::estimate_perimeter(sq, u, {0.08, 0.04}, 1e-4);
  CHECK(p.values.back() == doctest::Approx(exact - 2.0 * std::cos(t) * std::sin(t) * 0.04).epsilon(2e-3));
  CHECK(p.extrapolated == doctest::Approx(exact).epsilon(2e-3));
  CHECK(std::abs(p.extrapolated - exact) < 0.2 * std::abs(p.values.back() - exact));

  const auto disc = shapes::disc({0, 0}, 0.5);
  CHECK_THROWS_AS(variogram::estimate_perimeter(disc, kU1, {0.01, 0.02}, 1e-4), Error);
  CHECK_THROWS_AS(variogram::estimate_perimeter(disc, kU1, {0.01}, 1e-4), Error);
}

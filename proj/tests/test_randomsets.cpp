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
#include <numeric>
#include <random>

#include "eulergram/detail/compound_poisson.hpp"
#include "eulergram/error.hpp"
#include "eulergram/lattice.hpp"
#include "eulergram/randomsets.hpp"
#include "eulergram/topology.hpp"

using namespace eulergram;
using namespace eulergram::randomsets;
using nlohmann::json;
using shapes::PolyRectangle;

namespace {

const double kE1 = std::exp(-1.0);

ShotNoiseModel unit_square_model(double level, double intensity = 1.0, double side = 1.0) {
  return model_from_json(json{{"intensity", intensity},
                              {"grains", {{{"rects", {{0, side, 0, side}}}, {"p", 1.0}}}},
                              {"marks", {{{"value", 1.0}, {"p", 1.0}}}},
                              {"lambda", level}});
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kIoError;
}

Realization manual(std::vector<Germ> germs, Rect domain) {
  Realization r;
  r.germs = std::move(germs);
  r.domain = domain;
  r.padded = domain.dilated(2.0);
  r.poisson_count = r.germs.size();
  return r;
}

Germ square_germ(Vec2 at, double side, double mark = 1.0) {
  return {at, {{at.x, at.x + side, at.y, at.y + side}}, mark};
}

double field(const Realization& r, Vec2 p) {
  double f = 0.0;
  for (const auto& g : r.germs)
    for (const Rect& q : g.rects)
      if (q.contains(p)) {
        f += g.mark;
        break;
      }
  return f;
}

}  // namespace

TEST_CASE("compound Poisson law") {
  const auto pois = detail::compound_poisson({1.0}, {1.0});
  for (int n = 0; n < 6; ++n) CHECK(pois.prob_in(n - 0.5, n + 0.5) == doctest::Approx(kE1 / std::tgamma(n + 1.0)));
  CHECK(pois.prob_at_least(2.0) == doctest::Approx(1.0 - 2.0 * kE1));

  const auto two = detail::compound_poisson({1.0, 2.0}, {0.5, 0.3});
  CHECK(two.prob_in(1.5, 2.5) == doctest::Approx(std::exp(-0.8) * (0.125 + 0.3)));
  const double total = std::accumulate(two.probs.begin(), two.probs.end(), 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(two.has_atom_near(3.0));
  CHECK(!two.has_atom_near(0.5));
}

TEST_CASE("sampler determinism and germ counts") {
  const auto m = unit_square_model(1.5);
  const Rect dom{0, 10, 0, 10};
  const auto a = sample_realization(m, dom, 77), b = sample_realization(m, dom, 77);
  REQUIRE(a.germs.size() == b.germs.size());
  for (std::size_t i = 0; i < a.germs.size(); ++i) {
    CHECK(a.germs[i].location == b.germs[i].location);
    CHECK(a.germs[i].mark == b.germs[i].mark);
  }
  CHECK(a.padded == Rect{-1, 11, -1, 11});

  CHECK(sample_realization(unit_square_model(1.5, 0.0), dom, 1).germs.empty());

  double sum = 0.0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) sum += static_cast<double>(sample_realization(m, dom, static_cast<std::uint64_t>(s)).poisson_count);
  CHECK(std::abs(sum / n - 144.0) <= 3.0 * 12.0 / 100.0);
}

TEST_CASE("exact chi of hand-built level sets") {
  const auto v = PolyRectangle::single({-5, 5, -5, 5});
  CHECK(level_set_chi_exact(manual({square_germ({0, 0}, 1)}, {-5, 5, -5, 5}), 0.5, v) == 1);
  CHECK(level_set_chi_exact(manual({square_germ({0, 0}, 1), square_germ({0.5, 0.3}, 1)}, {-5, 5, -5, 5}), 1.5, v) == 1);
  CHECK(level_set_chi_exact(manual({square_germ({0, 0}, 1), square_germ({2.5, 0.3}, 1)}, {-5, 5, -5, 5}), 1.5, v) == 0);
  // Four overlapping squares around a hole at level 0.5.
  const auto ring = manual({{{0, 0}, {{0, 3, 0, 1}}, 1.0},
                            {{0, 2}, {{0.2, 3.2, 2, 3.1}}, 1.0},
                            {{0, 0}, {{-0.1, 1, 0.5, 2.5}}, 1.0},
                            {{2, 0}, {{2.1, 3.1, 0.6, 2.6}}, 1.0}},
                           {-5, 5, -5, 5});
  CHECK(level_set_chi_exact(ring, 0.5, v) == 0);
  const auto geo = level_set_geometry(manual({square_germ({0, 0}, 2)}, {-5, 5, -5, 5}), 0.5, v);
  CHECK(geo.vol == doctest::Approx(4.0));
  CHECK(geo.per_infinity() == doctest::Approx(8.0));
  // Clipped by the window.
  const auto clipped = level_set_geometry(manual({square_germ({4, 4}, 2)}, {-5, 5, -5, 5}), 0.5, v);
  CHECK(clipped.vol == doctest::Approx(1.0));
}

TEST_CASE("nearly coincident coordinates raise DegenerateArrangement") {
  const auto r = manual({square_germ({0, 0}, 1), square_germ({1e-13, 0.5}, 1)}, {-5, 5, -5, 5});
  CHECK(kind_of([&] { level_set_chi_exact(r, 0.5, PolyRectangle::single({-5, 5, -5, 5})); }) ==
        ErrorKind::kDegenerateArrangement);
}

TEST_CASE("exact chi agrees with a fine digitization") {
  // Coordinates on a 1/4 grid so a cell-centred 1/16 lattice never hits an edge.
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> pos(-4, 16), side(1, 8), mk(1, 3);
  const Rect dom{0, 4, 0, 4};
  const auto v = PolyRectangle({{0, 4, 0, 2.5}, {0.75, 3.25, 2.25, 4}});
  const double h = 1.0 / 16;
  const lattice::Lattice lat(h, {-h / 2, -h / 2}, 4 * 16 + 2, 4 * 16 + 2);
  int compared = 0, skipped = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Germ> germs;
    const int n = 3 + static_cast<int>(rng() % 12);
    for (int g = 0; g < n; ++g) {
      const Vec2 at{pos(rng) / 4.0, pos(rng) / 4.0};
      germs.push_back({at, {{at.x, at.x + side(rng) / 4.0, at.y, at.y + side(rng) / 4.0}}, static_cast<double>(mk(rng))});
    }
    const auto real = manual(germs, dom);
    const double level = 0.5 + static_cast<double>(rng() % 4);
    const lattice::IndicatorSet f([&](Vec2 p) { return v.contains(p) && field(real, p) >= level; }, dom);
    const auto g = lattice::digitize(f, lat);
    if (!topology::config_counts(g).admissible()) {
      ++skipped;  // corner contacts: the closed set is joined, 4-connectivity is not
      continue;
    }
    CHECK(level_set_chi_exact(real, level, v) == topology::chi_local(g));
    ++compared;
  }
  CHECK(compared >= 150);
  MESSAGE("compared " << compared << ", skipped corner contacts " << skipped);
}

TEST_CASE("level probabilities and closed forms for unit squares") {
  const auto m = unit_square_model(1.5);
  const auto p = level_probabilities(m);
  CHECK(p.p1 == doctest::Approx(kE1));
  CHECK(p.p2 == doctest::Approx(kE1));
  CHECK(p.p2_prime == doctest::Approx(kE1));
  CHECK(p.p_above == doctest::Approx(1.0 - 2.0 * kE1));
  CHECK(!p.level_tie);

  const auto v = PolyRectangle::single({0, 10, 0, 10});
  CHECK(mean_chi_closed_form(m, v) == doctest::Approx(1.0 + 118.0 * kE1).epsilon(1e-12));

  const auto b = unit_square_model(0.5);
  CHECK(boolean_mean_chi(b, v) == doctest::Approx(1.0 - 81.0 * kE1).epsilon(1e-12));
  CHECK(boolean_mean_chi(b, v) == doctest::Approx(mean_chi_closed_form(b, v)).epsilon(1e-12));
  const auto pb = level_probabilities(b);
  CHECK(pb.p1 == doctest::Approx(std::exp(-1.0)));
  CHECK(pb.p2_prime == doctest::Approx(std::exp(-1.0)));
  CHECK(pb.p2 == 0.0);

  // Near-zero intensity.
  const auto thin = unit_square_model(0.5, 1e-9);
  CHECK(boolean_mean_chi(thin, v) == doctest::Approx(mean_chi_closed_form(thin, v)).epsilon(1e-12));
}

TEST_CASE("level ties are flagged") {
  CHECK(level_probabilities(unit_square_model(2.0)).level_tie);
}

TEST_CASE("closed form with general side matches Monte Carlo under the corner-count weight") {
  // Side a = 1.5, level 2.5: the transversal-crossing coefficient derived from
  // corner counting is 1/4, which this configuration can resolve.
  const auto m = unit_square_model(2.5, 1.0, 1.5);
  const auto v = PolyRectangle::single({0, 10, 0, 10});
  ClosedFormOptions quarter;
  quarter.crossing_weight = 0.25;
  const double cf = mean_chi_closed_form(m, v, quarter);
  const auto mc = mc_mean_chi(m, v, 1000, 5);
  CHECK(std::abs(mc.mean - cf) <= 3.0 * mc.stderr_);
  MESSAGE("closed form " << cf << ", mc " << mc.mean << " +- " << mc.stderr_);
}

TEST_CASE("Monte Carlo basics") {
  const auto v = PolyRectangle::single({0, 10, 0, 10});
  const auto empty = mc_mean_chi(unit_square_model(1.5, 0.0), v, 10, 1);
  CHECK(empty.mean == 0.0);
  CHECK(empty.stderr_ == 0.0);
  CHECK(empty.log.size() == 10);
  CHECK(empty.log[3].seed == 4);

  const auto m = unit_square_model(1.5);
  const auto a = mc_mean_chi(m, v, 500, 900);
  const auto b = mc_mean_chi(m, v, 500, 900);
  CHECK(a.mean == b.mean);
  CHECK(std::abs(a.mean - (1.0 + 118.0 * kE1)) <= 3.0 * a.stderr_);
  CHECK_THROWS_AS(mc_mean_chi(m, v, 1, 1), Error);
}

TEST_CASE("mean volume and Per_inf follow the stationary densities") {
  const auto m = unit_square_model(1.5);
  const auto v = PolyRectangle::single({0, 8, 0, 6});
  const auto mc = mc_mean_chi(m, v, 800, 31);
  const auto d = closed_form_densities(m);
  auto se = [&](auto get) {
    double s = 0, s2 = 0;
    for (const auto& r : mc.log) {
      s += get(r);
      s2 += get(r) * get(r);
    }
    const double n = static_cast<double>(mc.log.size());
    return std::sqrt((s2 / n - (s / n) * (s / n)) / (n - 1));
  };
  const double vol_se = se([](const ReplicateRecord& r) { return r.vol; });
  const double per_se = se([](const ReplicateRecord& r) { return r.per_inf; });
  CHECK(std::abs(mc.mean_vol - 48.0 * d.vol_bar) <= 3.0 * vol_se);
  const double per_expect = 48.0 * (d.per_bar_u1 + d.per_bar_u2) + 28.0 * d.vol_bar;
  CHECK(std::abs(mc.mean_per_inf - per_expect) <= 3.0 * per_se);
}

TEST_CASE("shifting the window leaves the chi distribution unchanged") {
  const auto m = unit_square_model(1.5);
  const auto a = mc_mean_chi(m, PolyRectangle::single({0, 6, 0, 6}), 200, 10);
  const auto b = mc_mean_chi(m, PolyRectangle::single({37.3, 43.3, -12.1, -6.1}), 200, 5000);
  std::vector<double> xa, xb;
  for (const auto& r : a.log) xa.push_back(static_cast<double>(r.chi));
  for (const auto& r : b.log) xb.push_back(static_cast<double>(r.chi));
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  double d = 0.0;
  for (double x : xa) {
    const double fa = double(std::upper_bound(xa.begin(), xa.end(), x) - xa.begin()) / xa.size();
    const double fb = double(std::upper_bound(xb.begin(), xb.end(), x) - xb.begin()) / xb.size();
    d = std::max(d, std::abs(fa - fb));
  }
  CHECK(d < 1.63 * std::sqrt(2.0 / 200.0));  // 1% two-sample KS level
}

TEST_CASE("densities recovered from equal-area windows match the coefficients") {
  const auto model = model_from_json(json::parse(R"({
    "intensity": 0.7,
    "grains": [{"rects": [[0, 1, 0, 2]], "p": 0.6}, {"rects": [[0, 2, 0, 0.5], [0.5, 1, 0, 1.5]], "p": 0.4}],
    "marks": [{"value": 1.0, "p": 0.5}, {"value": 0.7, "p": 0.5}],
    "lambda": 1.6})"));
  // All of area 16: three rectangles plus two disjoint bars with chi = 2.
  const std::vector<PolyRectangle> ws{PolyRectangle::single({0, 4, 0, 4}), PolyRectangle::single({0, 8, 0, 2}),
                                      PolyRectangle::single({0, 2, 0, 8}),
                                      PolyRectangle({{0, 4, 0, 2}, {0, 4, 5, 7}})};
  // Unknowns: chi_bar, per_bar_u1, per_bar_u2, vol_bar.
  double a[4][5];
  for (int r = 0; r < 4; ++r) {
    const auto& w = ws[static_cast<std::size_t>(r)];
    a[r][0] = w.area();
    a[r][1] = 0.25 * w.per2();
    a[r][2] = 0.25 * w.per1();
    a[r][3] = static_cast<double>(w.chi());
    a[r][4] = mean_chi_closed_form(model, w);
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  // Equal areas leave chi_bar and vol_bar in a fixed combination; the fourth
  // window (chi = 2) separates them.
  const auto d = closed_form_densities(model);
  const double sol[4] = {a[0][4] / a[0][0], a[1][4] / a[1][1], a[2][4] / a[2][2], a[3][4] / a[3][3]};
  CHECK(std::abs(sol[0] * 16.0 - d.chi_bar * 16.0) < 1e-9);
  CHECK(std::abs(sol[1] - d.per_bar_u1) < 1e-9);
  CHECK(std::abs(sol[2] - d.per_bar_u2) < 1e-9);
  CHECK(std::abs(sol[3] - d.vol_bar) < 1e-9);
}

TEST_CASE("stationary density estimates") {
  const auto m = unit_square_model(1.5);
  const auto d = estimate_stationary_densities(m, 0.001, {0, 10, 0, 10}, 100, 3);
  CHECK(d.replicates == 100);
  CHECK(d.epsilon_used == 0.001);
  CHECK(std::abs(d.chi_bar - kE1) <= 3.0 * d.chi_bar_stderr);
  CHECK(std::abs(d.vol_bar - (1.0 - 2.0 * kE1)) <= 3.0 * d.vol_bar_stderr);
  CHECK(std::abs(d.per_bar_u1 - d.per_bar_u2) <= 2.0 * std::hypot(d.per_bar_u1_stderr, d.per_bar_u2_stderr));
  CHECK(d.vol_bar >= 0.0);
  CHECK(d.vol_bar <= 1.0);
}

TEST_CASE("model errors") {
  CHECK(kind_of([] {
          model_from_json(json::parse(R"({"intensity":1,"grain_family":{"width":{"law":"exponential","rate":1},
            "height":{"value":1}},"marks":[{"value":1}],"lambda":0.5})"))
              .grain_extent();
        }) == ErrorKind::kUnboundedGrain);
  const auto expo = model_from_json(json::parse(
      R"({"intensity":1,"grains":[{"rects":[[0,1,0,1]]}],"marks":{"law":"exponential","rate":2},"lambda":1.5})"));
  CHECK(kind_of([&] { level_probabilities(expo); }) == ErrorKind::kUnsupportedMarkLaw);
  CHECK(kind_of([&] { mean_chi_closed_form(expo, PolyRectangle::single({0, 1, 0, 1})); }) ==
        ErrorKind::kUnsupportedMarkLaw);
  CHECK(kind_of([] { boolean_mean_chi(unit_square_model(1.5), PolyRectangle::single({0, 1, 0, 1})); }) ==
        ErrorKind::kNotBooleanRegime);
  CHECK(kind_of([] {
          model_from_json(json::parse(R"({"intensity":1,"grains":[{"rects":[[0,1,0,1]]}],"marks":[{"value":0}],"lambda":1})"));
        }) == ErrorKind::kInvalidSpec);
  CHECK(kind_of([] { model_from_json(json::parse(R"({"intensity":1})")); }) == ErrorKind::kInvalidSpec);
}

TEST_CASE("parametric grains respect the cutoff") {
  const auto m = model_from_json(json::parse(R"({"intensity":0.5,"grain_family":{"width":{"law":"exponential","rate":1},
      "height":{"law":"uniform","min":0.5,"max":1.5},"cutoff":3},"marks":[{"value":1}],"lambda":0.5})"));
  CHECK(m.grain_extent() == 3.0);
  const auto r = sample_realization(m, {0, 20, 0, 20}, 8);
  for (const auto& g : r.germs) {
    CHECK(g.rects.front().width() <= 3.0);
    CHECK(g.rects.front().height() >= 0.5);
    CHECK(g.rects.front().height() <= 1.5);
  }
  const auto mom = grain_moments(m);
  CHECK(mom.e_chi == 1.0);
  CHECK(mom.e_per2 == doctest::Approx(2.0 * (1.0 - 4.0 * std::exp(-3.0)) / (1.0 - std::exp(-3.0))));
  CHECK(mom.e_per1 == doctest::Approx(2.0));
  // Round trip.
  CHECK(to_json(model_from_json(to_json(m))) == to_json(m));
}

TEST_CASE("grain moments of a mixture") {
  const auto m = model_from_json(json::parse(R"({"intensity":1,
    "grains":[{"rects":[[0,1,0,2]],"p":0.25},{"rects":[[0,4,0,1],[0,4,3,4],[0,1,0.5,3.5],[3,4,0.5,3.5]],"p":0.75}],
    "marks":[{"value":1}],"lambda":0.5})"));
  const auto mom = grain_moments(m);
  CHECK(mom.e_chi == doctest::Approx(0.25));
  CHECK(mom.e_vol == doctest::Approx(0.25 * 2 + 0.75 * 12));
  CHECK(mom.e_per1 == doctest::Approx(0.25 * 4 + 0.75 * 12));
  CHECK(mom.e_per2 == doctest::Approx(0.25 * 2 + 0.75 * 12));
}

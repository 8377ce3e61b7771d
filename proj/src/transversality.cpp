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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eulergram/error.hpp"
#include "eulergram/shapes.hpp"

namespace eulergram::shapes {
namespace {

double crossing_angle(Vec2 n_f, Vec2 n_w) {
  const double c = std::min(1.0, std::abs(dot(n_f, n_w)) / std::max(norm(n_f), 1e-300));
  return std::acos(c);
}

// Boundary point between a (inside == in_a) and b, by bisection.
Vec2 bisect(const lattice::IndicatorSet& set, Vec2 a, Vec2 b, bool in_a) {
  for (int it = 0; it < 80; ++it) {
    const Vec2 m = 0.5 * (a + b);
    if (set.contains(m) == in_a) a = m; else b = m;
  }
  return 0.5 * (a + b);
}

// Minimizer of the signed distance along [a, b] near a bracket, by golden section.
double golden_min(const lattice::IndicatorSet& set, Vec2 a, Vec2 b, double t0, double t1) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return set.signed_distance(a + t * (b - a)); };
  double c = t1 - g * (t1 - t0), d = t0 + g * (t1 - t0);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120 && t1 - t0 > 1e-15; ++it) {
    if (fc < fd) {
      t1 = d; d = c; fd = fc;
      c = t1 - g * (t1 - t0); fc = f(c);
    } else {
      t0 = c; c = d; fc = fd;
      d = t0 + g * (t1 - t0); fd = f(d);
    }
  }
  return 0.5 * (t0 + t1);
}

}  // namespace

TransversalityReport check_transversality(const lattice::IndicatorSet& set, const PolyRectangle& w,
                                          double angle_tol, int n_samples, double corner_tol) {
  if (!set.has_normal()) {
    throw Error(ErrorKind::kNoNormalAvailable, "the set exposes no boundary normal");
  }
  if (n_samples < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least two samples", {{"n_samples", n_samples}});
  }
  TransversalityReport rep;
  rep.min_angle = std::numbers::pi / 2;
  double total = 0.0;
  for (const Edge& e : w.edges()) total += e.length();

  for (const Edge& e : w.edges()) {
    const int n = std::max(2, static_cast<int>(std::ceil(n_samples * e.length() / std::max(total, 1e-300))));
    auto at = [&](int k) { return e.a + (static_cast<double>(k) / n) * (e.b - e.a); };
    std::vector<Crossing> found;
    bool prev = set.contains(at(0));
    for (int k = 1; k <= n; ++k) {
      const bool cur = set.contains(at(k));
      if (cur != prev) {
        const Vec2 p = bisect(set, at(k - 1), at(k), prev);
        found.push_back({p, crossing_angle(set.normal(p), e.normal), false});
      }
      prev = cur;
    }
    // Tangential contacts leave the predicate unchanged; look for interior
    // minima of |signed distance| that reach zero.
    if (set.has_signed_distance()) {
      std::vector<double> sd(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) sd[static_cast<std::size_t>(k)] = std::abs(set.signed_distance(at(k)));
      const double scale = std::max(1.0, e.length());
      for (int k = 1; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (!(sd[kk] <= sd[kk - 1] && sd[kk] <= sd[kk + 1])) continue;
        const double t = golden_min(set, e.a, e.b, (k - 1.0) / n, (k + 1.0) / n);
        const Vec2 p = e.a + t * (e.b - e.a);
        if (std::abs(set.signed_distance(p)) > 1e-9 * scale) continue;
        const bool seen = std::any_of(found.begin(), found.end(), [&](const Crossing& c) {
          return norm(c.point - p) < 2.0 * e.length() / n;
        });
        if (!seen) found.push_back({p, crossing_angle(set.normal(p), e.normal), true});
      }
    }
    for (const auto& c : found) {
      rep.min_angle = std::min(rep.min_angle, c.angle);
      rep.crossings.push_back(c);
    }
  }

  for (const Vec2 c : w.boundary_member_corners()) {
    bool hit;
    if (set.has_signed_distance()) {
      hit = std::abs(set.signed_distance(c)) <= corner_tol;
    } else {
      const bool in = set.contains(c);
      hit = false;
      for (const Vec2 d : {Vec2{1, 0}, Vec2{-1, 0}, Vec2{0, 1}, Vec2{0, -1}}) {
        if (set.contains(c + corner_tol * d) != in) hit = true;
      }
    }
    rep.corner_hit = rep.corner_hit || hit;
  }
  rep.pass = !rep.corner_hit && rep.min_angle > angle_tol;
  return rep;
}

}  // namespace eulergram::shapes

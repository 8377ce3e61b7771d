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

#include "eulergram/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "eulergram/detail/components.hpp"
#include "eulergram/error.hpp"

namespace eulergram::entanglement {

using lattice::BitGrid;
using lattice::Lattice;

namespace {

int mesh_ratio(const BitGrid& truth, double coarse_epsilon) {
  const double h = truth.lattice().epsilon();
  const double r = coarse_epsilon / h;
  const double k = std::round(r);
  if (!(coarse_epsilon > 0.0) || std::abs(r - k) > 1e-9 * std::max(1.0, r) || k < 4.0) {
    throw Error(ErrorKind::kMeshMismatch, "coarse mesh must be an integer multiple >= 4 of the truth mesh",
                {{"epsilon", coarse_epsilon}, {"h", h}, {"ratio", r}});
  }
  return static_cast<int>(k);
}

Lattice coarse_lattice(const BitGrid& truth, int k) {
  const Lattice& f = truth.lattice();
  return Lattice(f.epsilon() * k, f.origin(), (f.nx() - 1) / k + 1, (f.ny() - 1) / k + 1);
}

// Distance from fine point (fx, fy) to the closed pixels of the given phase,
// capped: returns true as soon as one lies within `limit` fine units.
bool within(const BitGrid& truth, bool phase, int fx, int fy, double limit) {
  const int reach = static_cast<int>(std::ceil(limit)) + 1;
  const double l2 = limit * limit * (1.0 + 1e-12);
  for (int dy = -reach; dy <= reach; ++dy) {
    const double ey = std::max(std::abs(dy) - 0.5, 0.0);
    if (ey * ey > l2) continue;
    for (int dx = -reach; dx <= reach; ++dx) {
      const double ex = std::max(std::abs(dx) - 0.5, 0.0);
      if (ex * ex + ey * ey > l2) continue;
      if (truth.get_or_zero(fx + dx, fy + dy) == phase) return true;
    }
  }
  return false;
}

bool in_phase(const BitGrid& truth, bool phase, int fx, int fy) {
  return truth.get_or_zero(fx, fy) == phase;
}

// Whether F links the two arcs of P' inside the square with x at fine (fx, fy)
// and y at (fx, fy) + k * dir.
bool arcs_linked(const BitGrid& truth, bool phase, int fx, int fy, int dx, int dy, int k,
                 std::vector<std::uint8_t>& member, std::vector<int>& stack) {
  const int m = k / 2;
  const int w = k + 1, hgt = 2 * m + 1;
  const int px = dy, py = dx;  // across the pair
  member.assign(static_cast<std::size_t>(w * hgt), 0);
  bool any = false;
  for (int b = -m; b <= m; ++b) {
    for (int a = 0; a <= k; ++a) {
      const bool ring = a == 0 || a == k || b == -m || b == m;
      const bool endpoint = b == 0 && (a == 0 || a == k);
      const bool in_f = in_phase(truth, phase, fx + a * dx + b * px, fy + a * dy + b * py);
      any = any || in_f;
      if ((ring && !endpoint) || in_f) member[static_cast<std::size_t>((b + m) * w + a)] = 1;
    }
  }
  if (!any) return false;
  // Flood from the upper arc and look for the lower one.
  const int start = (m + 1) * w;     // a = 0, b = +1
  const int target = (m - 1) * w;    // a = 0, b = -1
  stack.clear();
  stack.push_back(start);
  member[static_cast<std::size_t>(start)] = 2;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    if (c == target) return true;
    const int a = c % w, b = c / w;
    for (int nb = std::max(b - 1, 0); nb <= std::min(b + 1, hgt - 1); ++nb) {
      for (int na = std::max(a - 1, 0); na <= std::min(a + 1, w - 1); ++na) {
        auto& v = member[static_cast<std::size_t>(nb * w + na)];
        if (v == 1) {
          v = 2;
          stack.push_back(nb * w + na);
        }
      }
    }
  }
  return false;
}

BitGrid masked(const BitGrid& g, const shapes::PolyRectangle& w, bool phase) {
  BitGrid out(g.lattice());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (g.get(i, j) == phase && w.contains(g.lattice().point(i, j))) out.set(i, j);
    }
  }
  return out;
}

bool near_window(const shapes::PolyRectangle& w, Vec2 p, double eps) {
  const double tol = eps * (1.0 + 1e-12);
  return std::any_of(w.rects().begin(), w.rects().end(),
                     [&](const Rect& r) { return r.distance_to(p) <= tol; });
}

std::size_t count_near(const Resolution& res, const PairSet& ps, const shapes::PolyRectangle& w) {
  return static_cast<std::size_t>(std::count_if(ps.pairs.begin(), ps.pairs.end(), [&](const LatticePair& p) {
    return near_window(w, res.point(p.xi, p.xj), res.epsilon()) &&
           near_window(w, res.point(p.yi, p.yj), res.epsilon());
  }));
}

void require_margin(const BitGrid& truth, int k) {
  for (int j = 0; j < truth.ny(); ++j) {
    for (int i = 0; i < truth.nx(); ++i) {
      if (!truth.get(i, j)) continue;
      if (i < k || j < k || i >= truth.nx() - k || j >= truth.ny() - k) {
        throw Error(ErrorKind::kMarginViolation, "truth set comes within epsilon of the raster border",
                    {{"i", i}, {"j", j}, {"k", k}});
      }
    }
  }
}

}  // namespace

Resolution::Resolution(const BitGrid& truth, double coarse_epsilon)
    : truth_(&truth),
      k_(mesh_ratio(truth, coarse_epsilon)),
      epsilon_(truth.lattice().epsilon() * k_),
      coarse_(coarse_lattice(truth, k_)) {}

BitGrid Resolution::digitized() const {
  BitGrid out(coarse_);
  for (int cj = 0; cj < coarse_.ny(); ++cj) {
    for (int ci = 0; ci < coarse_.nx(); ++ci) {
      if (truth_->get(ci * k_, cj * k_)) out.set(ci, cj);
    }
  }
  return out;
}

PairSet detect_interior_pairs(const BitGrid& truth, double coarse_epsilon, bool phase) {
  const Resolution res(truth, coarse_epsilon);
  const int k = res.k();
  PairSet out{PairKind::kInterior, {}};
  std::vector<std::uint8_t> member;
  std::vector<int> stack;
  for (int cj = 0; cj < res.coarse().ny(); ++cj) {
    for (int ci = 0; ci < res.coarse().nx(); ++ci) {
      const int fx = ci * k, fy = cj * k;
      if (in_phase(truth, phase, fx, fy)) continue;
      for (const auto& [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (ci + dx >= res.coarse().nx() || cj + dy >= res.coarse().ny()) continue;
        if (in_phase(truth, phase, fx + k * dx, fy + k * dy)) continue;
        if (arcs_linked(truth, phase, fx, fy, dx, dy, k, member, stack)) {
          out.pairs.push_back({ci, cj, ci + dx, cj + dy});
        }
      }
    }
  }
  return out;
}

PairSet detect_boundary_pairs(const BitGrid& truth, double coarse_epsilon,
                              const shapes::PolyRectangle& window, bool phase) {
  const Resolution res(truth, coarse_epsilon);
  const int k = res.k();
  const double eps = res.epsilon();
  PairSet out{PairKind::kBoundary, {}};

  auto same_edge = [&](Vec2 x, Vec2 y) {
    const double tol = eps * (1.0 + 1e-12);
    return std::any_of(window.edges().begin(), window.edges().end(), [&](const shapes::Edge& e) {
      return segment_distance(x, e.a, e.b) <= tol && segment_distance(y, e.a, e.b) <= tol;
    });
  };
  // Walks one line of coarse points; `at(t)` maps a position to coarse indices.
  auto scan = [&](int n, auto at) {
    int last = -1;
    for (int t = 0; t < n; ++t) {
      const auto [ci, cj] = at(t);
      if (!in_phase(truth, phase, ci * k, cj * k)) continue;
      if (last >= 0 && t - last > 1) {
        const auto [xi, xj] = at(last);
        const Vec2 x = res.point(xi, xj), y = res.point(ci, cj);
        bool ok = window.contains(x) && window.contains(y) && same_edge(x, y);
        for (int s = last + 1; ok && s < t; ++s) {
          const auto [bi, bj] = at(s);
          ok = within(truth, phase, bi * k, bj * k, static_cast<double>(k));
        }
        if (ok) out.pairs.push_back({xi, xj, ci, cj});
      }
      last = t;
    }
  };
  for (int cj = 0; cj < res.coarse().ny(); ++cj) {
    scan(res.coarse().nx(), [cj](int t) { return std::pair{t, cj}; });
  }
  for (int ci = 0; ci < res.coarse().nx(); ++ci) {
    scan(res.coarse().ny(), [ci](int t) { return std::pair{ci, t}; });
  }
  return out;
}

bool BoundReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

BoundReport verify_bounds(const BitGrid& truth, double coarse_epsilon,
                          const std::optional<shapes::PolyRectangle>& window) {
  const Resolution res(truth, coarse_epsilon);
  require_margin(truth, res.k());
  BoundReport rep;

  const BitGrid dig = res.digitized();
  const auto gamma_dig = detail::label_cells(dig, true, 8).count;
  const auto gamma_truth = detail::label_cells(truth, true, 8).count;
  const auto interior = detect_interior_pairs(truth, coarse_epsilon, true);
  BoundCheck plain{"gamma_eps", gamma_dig,
                   2 * static_cast<std::int64_t>(interior.size()) + gamma_truth, true};
  plain.holds = plain.lhs <= plain.rhs;
  rep.checks.push_back(plain);

  rep.num_components_digitized = gamma_dig;
  rep.num_components_truth = gamma_truth;
  rep.n_interior = static_cast<std::int64_t>(interior.size());
  rep.bound_rhs = plain.rhs;
  {
    const auto holes = detail::label_cells(dig, false, 4);
    std::int64_t bounded = 0;
    for (int c = 0; c < holes.count; ++c) bounded += holes.touches_border[static_cast<std::size_t>(c)] ? 0 : 1;
    rep.chi_digitized = gamma_dig - bounded;
  }

  if (window && !window->empty()) {
    const auto& w = *window;
    BitGrid dig_w(res.coarse());
    for (int cj = 0; cj < dig.ny(); ++cj) {
      for (int ci = 0; ci < dig.nx(); ++ci) {
        if (dig.get(ci, cj) && w.contains(res.point(ci, cj))) dig_w.set(ci, cj);
      }
    }
    const auto gamma_dig_w = detail::label_cells(dig_w, true, 8).count;
    const auto gamma_truth_w = detail::label_cells(masked(truth, w, true), true, 8).count;
    const auto gamma_comp_w = detail::label_cells(masked(truth, w, false), true, 4).count;
    const auto n_w = static_cast<std::int64_t>(count_near(res, interior, w));
    const auto boundary = detect_boundary_pairs(truth, coarse_epsilon, w, true);
    const auto n_b = static_cast<std::int64_t>(boundary.size());
    const auto corners = static_cast<std::int64_t>(w.boundary_member_corners().size());

    BoundCheck win{"gamma_eps_window", gamma_dig_w,
                   2 * n_w + 2 * n_b + gamma_truth_w + 2 * corners, true};
    win.holds = win.lhs <= win.rhs;
    rep.checks.push_back(win);

    const auto holes = detail::label_cells(dig_w, false, 4);
    std::int64_t bounded = 0;
    for (int c = 0; c < holes.count; ++c) bounded += holes.touches_border[static_cast<std::size_t>(c)] ? 0 : 1;
    const auto interior_c = detect_interior_pairs(truth, coarse_epsilon, false);
    const auto n_wc = static_cast<std::int64_t>(count_near(res, interior_c, w));
    const auto n_bc = static_cast<std::int64_t>(detect_boundary_pairs(truth, coarse_epsilon, w, false).size());
    BoundCheck ec{"euler_abs", std::max<std::int64_t>(gamma_dig_w, bounded),
                  3 * corners + 2 * std::max(n_w, n_wc) + 2 * std::max(n_b, n_bc) +
                      std::max<std::int64_t>(gamma_comp_w, gamma_truth_w),
                  true};
    ec.holds = ec.lhs <= ec.rhs && std::abs(gamma_dig_w - bounded) <= ec.rhs;
    rep.checks.push_back(ec);

    rep.num_components_digitized = gamma_dig_w;
    rep.num_components_truth = gamma_truth_w;
    rep.n_interior = n_w;
    rep.n_boundary = n_b;
    rep.corners = corners;
    rep.bound_rhs = win.rhs;
    rep.chi_digitized = gamma_dig_w - bounded;
  }
  rep.holds = rep.num_components_digitized <= rep.bound_rhs;
  return rep;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  }
  return {{"num_components_digitized", r.num_components_digitized},
          {"num_components_truth", r.num_components_truth},
          {"n_interior", r.n_interior},
          {"n_boundary", r.n_boundary},
          {"corners", r.corners},
          {"bound_rhs", r.bound_rhs},
          {"holds", r.holds},
          {"chi_digitized", r.chi_digitized},
          {"checks", checks}};
}

std::string pairs_csv(const Resolution& res, const std::vector<const PairSet*>& sets, bool header) {
  std::ostringstream os;
  os.precision(17);
  if (header) os << "x1,y1,x2,y2,kind\n";
  for (const PairSet* s : sets) {
    const char* kind = s->kind == PairKind::kInterior ? "interior" : "boundary";
    for (const auto& p : s->pairs) {
      const Vec2 x = res.point(p.xi, p.xj), y = res.point(p.yi, p.yj);
      os << x.x << ',' << x.y << ',' << y.x << ',' << y.y << ',' << kind << '\n';
    }
  }
  return os.str();
}

RandomTruth random_truth(std::uint64_t seed, double h, int max_ratio, int interior_cells) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int margin = max_ratio + 2;
  const int n = interior_cells + 2 * margin;
  const Lattice lat(h, {0.0, 0.0}, n, n);
  const double lo = margin * h, hi = (margin + interior_cells - 1) * h;
  auto coord = [&](double pad) { return lo + pad + unit(rng) * (hi - lo - 2.0 * pad); };

  RandomTruth out{BitGrid(lat), {}, {}};
  if (seed % 2 == 0) {
    out.kind = "discs";
    const int count = 5 + static_cast<int>(unit(rng) * 40.0);
    std::vector<lattice::IndicatorSet> parts;
    for (int c = 0; c < count; ++c) {
      const double r = h * (2.0 + 8.0 * unit(rng));
      const Vec2 center{coord(r), coord(r)};
      parts.push_back(shapes::disc(center, r));
    }
    out.truth = lattice::digitize(shapes::union_of(parts), lat);
  } else {
    out.kind = "bumps";
    const int count = 3 + static_cast<int>(unit(rng) * 20.0);
    const double sigma = h * (2.0 + 6.0 * unit(rng));
    const double threshold = 0.3 + 0.6 * unit(rng);
    std::vector<Vec2> centers;
    for (int c = 0; c < count; ++c) centers.push_back({coord(4.0 * sigma), coord(4.0 * sigma)});
    const auto set = shapes::bumps(centers, 1.0, sigma, threshold);
    // Keep the support inside the interior so the margin stays empty.
    const Rect inner{lo, hi, lo, hi};
    out.truth = lattice::digitize(
        lattice::IndicatorSet([set, inner](Vec2 p) { return inner.contains(p) && set.contains(p); },
                              inner),
        lat);
  }

  const double min_side = 3.0 * max_ratio * h;
  for (;;) {
    const int members = 1 + static_cast<int>(unit(rng) * 3.0);
    std::vector<Rect> rects;
    for (int m = 0; m < members; ++m) {
      double x0 = coord(0.0), x1 = coord(0.0), y0 = coord(0.0), y1 = coord(0.0);
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      if (x1 - x0 < min_side || y1 - y0 < min_side) {
        --m;
        continue;
      }
      rects.push_back({x0, x1, y0, y1});
    }
    try {
      out.window = shapes::PolyRectangle(rects);
      break;
    } catch (const Error&) {
      // shared corner: draw again
    }
  }
  return out;
}

}  // namespace eulergram::entanglement

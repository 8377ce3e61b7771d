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

#include "eulergram/randomsets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eulergram/detail/arrangement.hpp"
#include "eulergram/detail/compound_poisson.hpp"
#include "eulergram/error.hpp"

namespace eulergram::randomsets {
namespace {

constexpr double kCoordTol = 1e-12;

// Compensated running sum.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr summarize(const std::vector<double>& xs) {
  MeanStderr r;
  if (xs.empty()) return r;
  KahanSum s;
  for (const double x : xs) s.add(x);
  r.mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  KahanSum q;
  for (const double x : xs) q.add((x - r.mean) * (x - r.mean));
  const double var = q.value() / static_cast<double>(xs.size() - 1);
  r.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
  return r;
}

void check_probabilities(double total, const char* what) {
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidSpec, std::string(what) + " probabilities must sum to 1",
                {{"sum", total}});
  }
}

void validate_side(const SideLaw& s, const std::optional<double>& cutoff) {
  using K = SideLaw::Kind;
  if (s.kind == K::kConstant && !(s.a > 0.0)) {
    throw Error(ErrorKind::kInvalidSpec, "constant side must be positive", {{"value", s.a}});
  }
  if (s.kind == K::kUniform && !(s.a >= 0.0 && s.b > s.a)) {
    throw Error(ErrorKind::kInvalidSpec, "uniform side needs 0 <= min < max", {{"min", s.a}, {"max", s.b}});
  }
  if (s.kind == K::kExponential) {
    if (!(s.a > 0.0)) throw Error(ErrorKind::kInvalidSpec, "exponential rate must be positive", {{"rate", s.a}});
    if (!cutoff) {
      throw Error(ErrorKind::kUnboundedGrain, "exponential grain sides need a cutoff to pad the domain");
    }
  }
}

double side_bound(const SideLaw& s, const std::optional<double>& cutoff) {
  switch (s.kind) {
    case SideLaw::Kind::kConstant: return s.a;
    case SideLaw::Kind::kUniform: return s.b;
    case SideLaw::Kind::kExponential: return *cutoff;
  }
  return 0.0;
}

double side_mean(const SideLaw& s, const std::optional<double>& cutoff) {
  switch (s.kind) {
    case SideLaw::Kind::kConstant: return s.a;
    case SideLaw::Kind::kUniform: return 0.5 * (s.a + s.b);
    case SideLaw::Kind::kExponential: {
      const double c = *cutoff, r = s.a;
      const double tail = std::exp(-r * c);
      return 1.0 / r - c * tail / (1.0 - tail);
    }
  }
  return 0.0;
}

double side_truncation(const SideLaw& s, const std::optional<double>& cutoff) {
  return s.kind == SideLaw::Kind::kExponential ? std::exp(-s.a * *cutoff) : 0.0;
}

double draw_side(const SideLaw& s, const std::optional<double>& cutoff, std::mt19937_64& rng) {
  switch (s.kind) {
    case SideLaw::Kind::kConstant: return s.a;
    case SideLaw::Kind::kUniform: return std::uniform_real_distribution<double>(s.a, s.b)(rng);
    case SideLaw::Kind::kExponential: {
      std::exponential_distribution<double> d(s.a);
      for (;;) {
        const double v = d(rng);
        if (v <= *cutoff) return v;
      }
    }
  }
  return 0.0;
}

SideLaw side_from_json(const nlohmann::json& j) {
  SideLaw s;
  const std::string law = j.value("law", "constant");
  if (law == "constant") {
    s.kind = SideLaw::Kind::kConstant;
    s.a = j.at("value").get<double>();
  } else if (law == "uniform") {
    s.kind = SideLaw::Kind::kUniform;
    s.a = j.at("min").get<double>();
    s.b = j.at("max").get<double>();
  } else if (law == "exponential") {
    s.kind = SideLaw::Kind::kExponential;
    s.a = j.at("rate").get<double>();
  } else {
    throw Error(ErrorKind::kInvalidSpec, "unknown side law", {{"law", law}});
  }
  return s;
}

nlohmann::json side_to_json(const SideLaw& s) {
  switch (s.kind) {
    case SideLaw::Kind::kConstant: return {{"law", "constant"}, {"value", s.a}};
    case SideLaw::Kind::kUniform: return {{"law", "uniform"}, {"min", s.a}, {"max", s.b}};
    case SideLaw::Kind::kExponential: return {{"law", "exponential"}, {"rate", s.a}};
  }
  return {};
}

const std::vector<MarkAtom>& require_atoms(const ShotNoiseModel& m) {
  if (m.marks.kind != MarkLaw::Kind::kAtoms) {
    throw Error(ErrorKind::kUnsupportedMarkLaw,
                "closed-form probabilities need an atomic mark law");
  }
  return m.marks.atoms;
}

}  // namespace

void ShotNoiseModel::validate() const {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw Error(ErrorKind::kInvalidSpec, "intensity must be finite and non-negative", {{"intensity", intensity}});
  }
  if (!std::isfinite(level)) throw Error(ErrorKind::kInvalidSpec, "level must be finite");
  if (family) {
    validate_side(family->width, family->cutoff);
    validate_side(family->height, family->cutoff);
  } else {
    if (grains.empty()) throw Error(ErrorKind::kInvalidSpec, "grain mixture is empty");
    double total = 0.0;
    for (const auto& g : grains) {
      if (!(g.p > 0.0) || g.grain.empty()) {
        throw Error(ErrorKind::kInvalidSpec, "grain atoms need positive weight and a non-empty grain");
      }
      total += g.p;
    }
    check_probabilities(total, "grain");
  }
  switch (marks.kind) {
    case MarkLaw::Kind::kAtoms: {
      if (marks.atoms.empty()) throw Error(ErrorKind::kInvalidSpec, "mark law has no atoms");
      double total = 0.0;
      for (const auto& a : marks.atoms) {
        if (!(a.value > 0.0) || !(a.p > 0.0)) {
          throw Error(ErrorKind::kInvalidSpec, "mark atoms must be strictly positive",
                      {{"value", a.value}, {"p", a.p}});
        }
        total += a.p;
      }
      check_probabilities(total, "mark");
      break;
    }
    case MarkLaw::Kind::kExponential:
      if (!(marks.a > 0.0)) throw Error(ErrorKind::kInvalidSpec, "mark rate must be positive");
      break;
    case MarkLaw::Kind::kUniform:
      if (!(marks.a > 0.0 && marks.b > marks.a)) {
        throw Error(ErrorKind::kInvalidSpec, "uniform marks need 0 < min < max");
      }
      break;
  }
}

double ShotNoiseModel::grain_extent() const {
  if (family) {
    return std::max(side_bound(family->width, family->cutoff), side_bound(family->height, family->cutoff));
  }
  double r = 0.0;
  for (const auto& g : grains) {
    for (const Rect& q : g.grain.rects()) {
      r = std::max({r, std::abs(q.x0), std::abs(q.x1), std::abs(q.y0), std::abs(q.y1)});
    }
  }
  return r;
}

ShotNoiseModel model_from_json(const nlohmann::json& j) {
  try {
    ShotNoiseModel m;
    m.intensity = j.at("intensity").get<double>();
    m.level = j.at("lambda").get<double>();
    if (j.contains("grain_family")) {
      const auto& f = j.at("grain_family");
      ParametricGrain pg;
      pg.width = side_from_json(f.at("width"));
      pg.height = side_from_json(f.at("height"));
      if (f.contains("cutoff")) pg.cutoff = f.at("cutoff").get<double>();
      m.family = pg;
    } else {
      for (const auto& g : j.at("grains")) {
        m.grains.push_back({shapes::make_polyrect(g), g.value("p", 1.0)});
      }
    }
    const auto& mk = j.at("marks");
    if (mk.is_array()) {
      m.marks.kind = MarkLaw::Kind::kAtoms;
      for (const auto& a : mk) m.marks.atoms.push_back({a.at("value").get<double>(), a.value("p", 1.0)});
    } else {
      const std::string law = mk.at("law").get<std::string>();
      if (law == "exponential") {
        m.marks.kind = MarkLaw::Kind::kExponential;
        m.marks.a = mk.at("rate").get<double>();
      } else if (law == "uniform") {
        m.marks.kind = MarkLaw::Kind::kUniform;
        m.marks.a = mk.at("min").get<double>();
        m.marks.b = mk.at("max").get<double>();
      } else {
        throw Error(ErrorKind::kInvalidSpec, "unknown mark law", {{"law", law}});
      }
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("bad model: ") + e.what());
  }
}

nlohmann::json to_json(const ShotNoiseModel& m) {
  nlohmann::json j{{"intensity", m.intensity}, {"lambda", m.level}};
  if (m.family) {
    nlohmann::json f{{"width", side_to_json(m.family->width)}, {"height", side_to_json(m.family->height)}};
    if (m.family->cutoff) f["cutoff"] = *m.family->cutoff;
    j["grain_family"] = f;
  } else {
    auto grains = nlohmann::json::array();
    for (const auto& g : m.grains) {
      auto rects = nlohmann::json::array();
      for (const Rect& r : g.grain.rects()) rects.push_back({r.x0, r.x1, r.y0, r.y1});
      grains.push_back({{"rects", rects}, {"p", g.p}});
    }
    j["grains"] = grains;
  }
  switch (m.marks.kind) {
    case MarkLaw::Kind::kAtoms: {
      auto atoms = nlohmann::json::array();
      for (const auto& a : m.marks.atoms) atoms.push_back({{"value", a.value}, {"p", a.p}});
      j["marks"] = atoms;
      break;
    }
    case MarkLaw::Kind::kExponential: j["marks"] = {{"law", "exponential"}, {"rate", m.marks.a}}; break;
    case MarkLaw::Kind::kUniform: j["marks"] = {{"law", "uniform"}, {"min", m.marks.a}, {"max", m.marks.b}}; break;
  }
  return j;
}

Realization sample_realization(const ShotNoiseModel& model, const Rect& domain, std::uint64_t seed) {
  model.validate();
  if (!domain.valid()) throw Error(ErrorKind::kInvalidArgument, "sampling domain is empty");
  Realization real;
  real.domain = domain;
  real.padding = model.grain_extent();
  real.padded = domain.dilated(real.padding);

  std::mt19937_64 rng(seed);
  const double mean = model.intensity * real.padded.area();
  if (mean <= 0.0) return real;
  real.poisson_count = static_cast<std::uint64_t>(std::poisson_distribution<long long>(mean)(rng));

  std::uniform_real_distribution<double> ux(real.padded.x0, real.padded.x1);
  std::uniform_real_distribution<double> uy(real.padded.y0, real.padded.y1);
  std::vector<double> gw;
  for (const auto& g : model.grains) gw.push_back(g.p);
  std::discrete_distribution<std::size_t> pick_grain(gw.begin(), gw.end());
  std::vector<double> mw;
  for (const auto& a : model.marks.atoms) mw.push_back(a.p);
  std::discrete_distribution<std::size_t> pick_mark(mw.begin(), mw.end());

  real.germs.reserve(real.poisson_count);
  for (std::uint64_t n = 0; n < real.poisson_count; ++n) {
    Germ g;
    g.location = {ux(rng), uy(rng)};
    if (model.family) {
      const double a = draw_side(model.family->width, model.family->cutoff, rng);
      const double b = draw_side(model.family->height, model.family->cutoff, rng);
      g.rects.push_back({g.location.x, g.location.x + a, g.location.y, g.location.y + b});
    } else {
      for (const Rect& r : model.grains[pick_grain(rng)].grain.rects()) g.rects.push_back(r.translated(g.location));
    }
    switch (model.marks.kind) {
      case MarkLaw::Kind::kAtoms: g.mark = model.marks.atoms[pick_mark(rng)].value; break;
      case MarkLaw::Kind::kExponential: g.mark = std::exponential_distribution<double>(model.marks.a)(rng); break;
      case MarkLaw::Kind::kUniform:
        g.mark = std::uniform_real_distribution<double>(model.marks.a, model.marks.b)(rng);
        break;
    }
    const bool hits = std::any_of(g.rects.begin(), g.rects.end(),
                                  [&](const Rect& r) { return r.intersects(real.padded); });
    if (hits) real.germs.push_back(std::move(g));
  }
  return real;
}

LevelSetGeometry level_set_geometry(const Realization& real, double level,
                                    const shapes::PolyRectangle& window) {
  LevelSetGeometry out;
  if (window.empty()) return out;
  const Rect clip = window.bounding_box();
  std::vector<double> xs{clip.x0, clip.x1}, ys{clip.y0, clip.y1};
  std::vector<detail::WeightedRect> field, inside;
  for (const Rect& r : window.rects()) {
    xs.insert(xs.end(), {r.x0, r.x1});
    ys.insert(ys.end(), {r.y0, r.y1});
    inside.push_back({r, 1.0});
  }
  for (const auto& g : real.germs) {
    for (const Rect& r : g.rects) {
      if (!r.intersects(clip)) continue;
      const Rect c{std::max(r.x0, clip.x0), std::min(r.x1, clip.x1), std::max(r.y0, clip.y0),
                   std::min(r.y1, clip.y1)};
      for (const double x : {r.x0, r.x1}) if (x > clip.x0 && x < clip.x1) xs.push_back(x);
      for (const double y : {r.y0, r.y1}) if (y > clip.y0 && y < clip.y1) ys.push_back(y);
      field.push_back({c, g.mark});
    }
  }
  xs = detail::unique_sorted(std::move(xs));
  ys = detail::unique_sorted(std::move(ys));
  detail::require_separated(xs, kCoordTol, "x");
  detail::require_separated(ys, kCoordTol, "y");

  detail::CellComplex cx(xs, ys);
  const auto f = detail::cell_sums(xs, ys, field);
  const auto in_w = detail::cell_sums(xs, ys, inside);
  for (int j = 0; j < cx.cells_y(); ++j) {
    for (int i = 0; i < cx.cells_x(); ++i) {
      const auto k = static_cast<std::size_t>(j) * static_cast<std::size_t>(cx.cells_x()) + static_cast<std::size_t>(i);
      cx.set_cell(i, j, in_w[k] > 0.5 && f[k] >= level);
    }
  }
  const auto feat = detail::analyze(cx);
  out.chi = feat.chi;
  out.per1 = feat.per1;
  out.per2 = feat.per2;
  out.vol = feat.vol;
  return out;
}

std::int64_t level_set_chi_exact(const Realization& real, double level, const shapes::PolyRectangle& window) {
  return level_set_geometry(real, level, window).chi;
}

GrainMoments grain_moments(const ShotNoiseModel& model) {
  GrainMoments m;
  if (model.family) {
    const double ea = side_mean(model.family->width, model.family->cutoff);
    const double eb = side_mean(model.family->height, model.family->cutoff);
    m.e_chi = 1.0;
    m.e_per1 = 2.0 * eb;
    m.e_per2 = 2.0 * ea;
    m.e_vol = ea * eb;
    m.truncated_mass = side_truncation(model.family->width, model.family->cutoff) +
                       side_truncation(model.family->height, model.family->cutoff);
    return m;
  }
  for (const auto& g : model.grains) {
    const auto f = shapes::polyrect_features(g.grain);
    m.e_chi += g.p * static_cast<double>(f.chi);
    m.e_per1 += g.p * f.per1;
    m.e_per2 += g.p * f.per2;
    m.e_vol += g.p * f.vol;
  }
  return m;
}

LevelProbabilities level_probabilities(const ShotNoiseModel& model) {
  model.validate();
  const auto& atoms = require_atoms(model);
  const double cover = model.intensity * grain_moments(model).e_vol;
  std::vector<double> values, means;
  for (const auto& a : atoms) {
    values.push_back(a.value);
    means.push_back(cover * a.p);
  }
  const auto law = detail::compound_poisson(values, means);
  const double lam = model.level;

  LevelProbabilities p;
  p.p_above = law.prob_at_least(lam);
  p.level_tie = law.has_atom_near(lam);
  for (const auto& a : atoms) {
    p.p1 += a.p * law.prob_in(lam - a.value, lam);
    p.level_tie = p.level_tie || law.has_atom_near(lam - a.value);
    for (const auto& b : atoms) {
      const double hi = std::max(a.value, b.value);
      p.p2 += a.p * b.p * law.prob_in(lam - a.value - b.value, lam - hi);
      p.p2_prime += a.p * b.p * law.prob_in(lam - hi, lam);
      p.level_tie = p.level_tie || law.has_atom_near(lam - a.value - b.value);
    }
  }
  return p;
}

Densities closed_form_densities(const ShotNoiseModel& model, const ClosedFormOptions& opt) {
  const auto p = level_probabilities(model);
  const auto g = grain_moments(model);
  const double l = model.intensity;
  Densities d;
  d.chi_bar = l * p.p1 * g.e_chi + opt.crossing_weight * l * l * (p.p2 - p.p2_prime) * g.e_per1 * g.e_per2;
  d.per_bar_u1 = l * p.p1 * g.e_per1;
  d.per_bar_u2 = l * p.p1 * g.e_per2;
  d.vol_bar = p.p_above;
  return d;
}

double mean_chi_closed_form(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                            const ClosedFormOptions& opt) {
  const auto d = closed_form_densities(model, opt);
  const auto v = shapes::polyrect_features(window);
  return v.vol * d.chi_bar + static_cast<double>(v.chi) * d.vol_bar +
         0.25 * (v.per1 * d.per_bar_u2 + v.per2 * d.per_bar_u1);
}

double boolean_mean_chi(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                        const ClosedFormOptions& opt) {
  model.validate();
  const bool unit_marks = model.marks.kind == MarkLaw::Kind::kAtoms &&
                          std::all_of(model.marks.atoms.begin(), model.marks.atoms.end(),
                                      [](const MarkAtom& a) { return a.value == 1.0; });
  if (!unit_marks || !(model.level > 0.0 && model.level < 1.0)) {
    throw Error(ErrorKind::kNotBooleanRegime, "boolean regime needs unit marks and a level in (0, 1)",
                {{"level", model.level}});
  }
  const auto g = grain_moments(model);
  const double l = model.intensity;
  const double p1 = std::exp(-l * g.e_vol);
  const auto v = shapes::polyrect_features(window);
  // p2 = 0 and p2' = p1 in this regime.
  return v.vol * p1 * (l * g.e_chi - opt.crossing_weight * l * l * g.e_per1 * g.e_per2) +
         static_cast<double>(v.chi) * (1.0 - p1) +
         0.25 * l * p1 * (v.per1 * g.e_per2 + v.per2 * g.e_per1);
}

MonteCarloResult mc_mean_chi(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                             int replicates, std::uint64_t seed) {
  if (replicates < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least two replicates", {{"replicates", replicates}});
  }
  MonteCarloResult out;
  std::vector<double> chi, per, vol;
  const Rect domain = window.bounding_box();
  for (int r = 0; r < replicates; ++r) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(r);
    const auto real = sample_realization(model, domain, s);
    const auto geo = level_set_geometry(real, model.level, window);
    out.log.push_back({s, geo.chi, geo.per_infinity(), geo.vol});
    chi.push_back(static_cast<double>(geo.chi));
    per.push_back(geo.per_infinity());
    vol.push_back(geo.vol);
  }
  const auto c = summarize(chi);
  out.mean = c.mean;
  out.stderr_ = c.stderr_;
  out.mean_per_inf = summarize(per).mean;
  out.mean_vol = summarize(vol).mean;
  return out;
}

namespace {

struct PatternAreas {
  double out = 0.0;   // x in F, x+e u1 and x+e u2 not in F
  double in = 0.0;    // x not in F, x-e u1 and x-e u2 in F
  double edge1 = 0.0; // x in F, x+e u1 not in F
  double edge2 = 0.0; // x in F, x+e u2 not in F
  double vol = 0.0;
};

// Base cell column of mid + shift for every refined column.
std::vector<int> locate_all(const std::vector<double>& refined, const detail::CellComplex& base,
                            double shift, bool x_axis) {
  std::vector<int> out(refined.size() - 1);
  for (std::size_t k = 0; k + 1 < refined.size(); ++k) {
    const double m = 0.5 * (refined[k] + refined[k + 1]) + shift;
    out[k] = x_axis ? base.locate_x(m) : base.locate_y(m);
  }
  return out;
}

std::vector<double> refine(const std::vector<double>& base, double lo, double hi, double eps) {
  std::vector<double> r{lo, hi};
  for (const double c : base) {
    for (const double v : {c - eps, c, c + eps}) {
      if (v > lo && v < hi) r.push_back(v);
    }
  }
  return detail::unique_sorted(std::move(r));
}

PatternAreas pattern_areas(const Realization& real, double level, const Rect& window, double eps) {
  const Rect clip = window.dilated(2.0 * eps);
  std::vector<double> xs{clip.x0, clip.x1}, ys{clip.y0, clip.y1};
  std::vector<detail::WeightedRect> field;
  for (const auto& g : real.germs) {
    for (const Rect& r : g.rects) {
      if (!r.intersects(clip)) continue;
      const Rect c{std::max(r.x0, clip.x0), std::min(r.x1, clip.x1), std::max(r.y0, clip.y0),
                   std::min(r.y1, clip.y1)};
      xs.insert(xs.end(), {c.x0, c.x1});
      ys.insert(ys.end(), {c.y0, c.y1});
      field.push_back({c, g.mark});
    }
  }
  detail::CellComplex base(detail::unique_sorted(std::move(xs)), detail::unique_sorted(std::move(ys)));
  const auto f = detail::cell_sums(base.xs(), base.ys(), field);
  for (int j = 0; j < base.cells_y(); ++j) {
    for (int i = 0; i < base.cells_x(); ++i) {
      base.set_cell(i, j, f[static_cast<std::size_t>(j) * static_cast<std::size_t>(base.cells_x()) +
                            static_cast<std::size_t>(i)] >= level);
    }
  }
  const auto rx = refine(base.xs(), window.x0, window.x1, eps);
  const auto ry = refine(base.ys(), window.y0, window.y1, eps);
  const auto cx0 = locate_all(rx, base, 0.0, true), cxp = locate_all(rx, base, eps, true),
             cxm = locate_all(rx, base, -eps, true);
  const auto cy0 = locate_all(ry, base, 0.0, false), cyp = locate_all(ry, base, eps, false),
             cym = locate_all(ry, base, -eps, false);

  PatternAreas a;
  KahanSum out, in, e1, e2, vol;
  for (std::size_t j = 0; j + 1 < ry.size(); ++j) {
    const double hgt = ry[j + 1] - ry[j];
    for (std::size_t i = 0; i + 1 < rx.size(); ++i) {
      const double area = hgt * (rx[i + 1] - rx[i]);
      const bool c = base.cell(cx0[i], cy0[j]);
      const bool east = base.cell(cxp[i], cy0[j]), north = base.cell(cx0[i], cyp[j]);
      if (c) {
        vol.add(area);
        if (!east) e1.add(area);
        if (!north) e2.add(area);
        if (!east && !north) out.add(area);
      } else if (base.cell(cxm[i], cy0[j]) && base.cell(cx0[i], cym[j])) {
        in.add(area);
      }
    }
  }
  a.out = out.value();
  a.in = in.value();
  a.edge1 = e1.value();
  a.edge2 = e2.value();
  a.vol = vol.value();
  return a;
}

}  // namespace

StationaryDensities estimate_stationary_densities(const ShotNoiseModel& model, double epsilon,
                                                  const Rect& window, int replicates, std::uint64_t seed) {
  if (replicates < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least two replicates", {{"replicates", replicates}});
  }
  if (!(epsilon > 0.0) || !window.valid()) {
    throw Error(ErrorKind::kInvalidArgument, "need a positive epsilon and a non-empty window");
  }
  std::vector<double> chi, p1, p2, vol;
  const double area = window.area();
  for (int r = 0; r < replicates; ++r) {
    const auto real = sample_realization(model, window.dilated(2.0 * epsilon), seed + static_cast<std::uint64_t>(r));
    const auto a = pattern_areas(real, model.level, window, epsilon);
    chi.push_back((a.out - a.in) / (area * epsilon * epsilon));
    p1.push_back(2.0 * a.edge1 / (area * epsilon));
    p2.push_back(2.0 * a.edge2 / (area * epsilon));
    vol.push_back(a.vol / area);
  }
  StationaryDensities d;
  const auto c = summarize(chi), u1 = summarize(p1), u2 = summarize(p2), v = summarize(vol);
  d.chi_bar = c.mean;
  d.chi_bar_stderr = c.stderr_;
  d.per_bar_u1 = u1.mean;
  d.per_bar_u1_stderr = u1.stderr_;
  d.per_bar_u2 = u2.mean;
  d.per_bar_u2_stderr = u2.stderr_;
  d.vol_bar = v.mean;
  d.vol_bar_stderr = v.stderr_;
  d.epsilon_used = epsilon;
  d.replicates = replicates;
  return d;
}

}  // namespace eulergram::randomsets

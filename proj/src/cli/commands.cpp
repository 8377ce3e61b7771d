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
#include <sstream>

#include "eulergram/cli.hpp"
#include "eulergram/config.hpp"
#include "eulergram/entanglement.hpp"
#include "eulergram/error.hpp"
#include "eulergram/lattice.hpp"
#include "eulergram/randomsets.hpp"
#include "eulergram/shapes.hpp"
#include "eulergram/topology.hpp"
#include "eulergram/variogram.hpp"

namespace eulergram::cli {
namespace {

using nlohmann::json;

class Csv {
 public:
  explicit Csv(const std::string& header) { os_ << header << '\n'; os_.precision(17); }
  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cells, first = false), ...);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

struct Subject {
  lattice::IndicatorSet set;
  std::optional<shapes::PolyRectangle> window;
};

Subject read_subject(const json& cfg) {
  Subject s{shapes::make_shape(config::require(cfg, "shape")), std::nullopt};
  if (cfg.contains("window")) {
    s.window = shapes::make_polyrect(cfg.at("window"));
    s.set = lattice::intersect(s.set, shapes::make_indicator(*s.window));
  }
  return s;
}

struct GridSummary {
  json j;
  std::optional<std::int64_t> chi_local;
};

GridSummary summarize_grid(const lattice::BitGrid& grid) {
  GridSummary g;
  const auto counts = topology::config_counts(grid);
  const auto set = topology::label_components(grid, topology::Which::kSet);
  const auto holes = topology::label_components(grid, topology::Which::kComplement);
  g.j = {{"nx", grid.nx()},
         {"ny", grid.ny()},
         {"set_bits", grid.count()},
         {"volume", lattice::grid_volume(grid)},
         {"phi_out", counts.phi_out},
         {"phi_in", counts.phi_in},
         {"phi_x_set", counts.phi_x_set},
         {"phi_x_complement", counts.phi_x_complement},
         {"admissible", counts.admissible()},
         {"chi_vef", topology::chi_vef(grid)},
         {"num_set_components", set.num_set_components},
         {"num_complement_bounded_components", holes.num_complement_bounded_components},
         {"chi_components", set.num_set_components - holes.num_complement_bounded_components}};
  if (counts.admissible()) {
    g.chi_local = topology::chi_local(grid);
    g.j["chi_local"] = *g.chi_local;
    g.j["chi_bicovariogram_discrete"] = variogram::chi_bicovariogram_discrete(grid);
  } else {
    g.j["chi_local"] = nullptr;
    g.j["chi_bicovariogram_discrete"] = nullptr;
  }
  return g;
}

lattice::BitGrid digitize_subject(const Subject& s, double eps, int margin) {
  const auto lat = lattice::Lattice::covering(s.set.bounding_box(), eps, margin);
  return lattice::digitize(s.set, lat);
}

CommandOutput cmd_chi(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  const Subject s = read_subject(cfg);
  const double eps = config::get_double(cfg, "epsilon");
  const auto margin = config::get_int(cfg, "margin", 2);
  const bool dump = config::get_bool(cfg, "dump_grid", false);
  out.resolved_config["margin"] = margin;
  out.resolved_config["dump_grid"] = dump;
  if (margin < 1) throw Error(ErrorKind::kConfigInvalid, "margin must be at least 1", {{"key", "margin"}});

  const auto grid = digitize_subject(s, eps, static_cast<int>(margin));
  out.results = summarize_grid(grid).j;
  out.results["epsilon"] = eps;
  if (dump) {
    out.files.push_back({"grid.pbm", lattice::encode_pbm(grid)});
    out.files.push_back({"grid.pbm.json", lattice::lattice_json(grid.lattice()) + "\n"});
  }
  return out;
}

CommandOutput cmd_sweep(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  const Subject s = read_subject(cfg);
  const auto eps_list = config::get_doubles(cfg, "epsilons");
  const auto margin = config::get_int(cfg, "margin", 2);
  const double h = config::get_double(cfg, "quad_mesh", 0.0);
  out.resolved_config["margin"] = margin;
  out.resolved_config["quad_mesh"] = h;

  Csv csv("epsilon,nx,ny,admissible,chi_local,chi_vef,chi_components,chi_bicovariogram");
  json rows = json::array();
  std::vector<std::optional<std::int64_t>> chis;
  for (const double eps : eps_list) {
    const auto grid = digitize_subject(s, eps, static_cast<int>(margin));
    auto g = summarize_grid(grid);
    g.j["epsilon"] = eps;
    std::string bicov = "";
    if (h > 0.0 && h <= eps / 8.0) {
      const double v = variogram::chi_bicovariogram(s.set, eps, h);
      g.j["chi_bicovariogram"] = v;
      std::ostringstream os;
      os.precision(17);
      os << v;
      bicov = os.str();
    }
    chis.push_back(g.chi_local);
    csv.row(eps, grid.nx(), grid.ny(), g.chi_local ? 1 : 0,
            g.chi_local ? std::to_string(*g.chi_local) : std::string("NA"), g.j["chi_vef"].get<std::int64_t>(),
            g.j["chi_components"].get<std::int64_t>(), bicov);
    rows.push_back(g.j);
  }
  // Plateau: the longest run of equal admissible values ending at the finest epsilon.
  json plateau = nullptr;
  if (!chis.empty() && chis.back()) {
    std::size_t start = chis.size() - 1;
    while (start > 0 && chis[start - 1] && *chis[start - 1] == *chis.back()) --start;
    plateau = {{"value", *chis.back()},
               {"from_epsilon", eps_list[start]},
               {"length", chis.size() - start}};
  }
  out.results = {{"rows", rows}, {"plateau", plateau}};
  out.files.push_back({"sweep.csv", csv.str()});
  return out;
}

CommandOutput cmd_perimeter(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  const Subject s = read_subject(cfg);
  const auto eps_list = config::get_doubles(cfg, "epsilons");
  const double h = config::get_double(cfg, "quad_mesh");
  const auto n = config::get_int(cfg, "directions", 64);
  out.resolved_config["directions"] = n;

  const auto sum = variogram::summarize_perimeter(s.set, eps_list, h, static_cast<int>(n));
  Csv csv("angle,epsilon,value,extrapolated");
  for (const auto& d : sum.directions) {
    const double angle = std::atan2(d.direction.y, d.direction.x);
    for (std::size_t k = 0; k < d.epsilons.size(); ++k) csv.row(angle, d.epsilons[k], d.values[k], d.extrapolated);
  }
  // Per == Per_inf for axis-aligned rectangles; the slack absorbs the Riemann sum and quadrature.
  const double tol = config::get_double(cfg, "sandwich_tolerance", 0.01);
  out.resolved_config["sandwich_tolerance"] = tol;
  out.results = {{"per_u1", sum.per_u1},
                 {"per_u2", sum.per_u2},
                 {"per_u1_values", sum.along_u1.values},
                 {"per_u2_values", sum.along_u2.values},
                 {"per_infinity", sum.per_infinity},
                 {"per", sum.per},
                 {"directions", n},
                 {"sandwich_holds", sum.per <= sum.per_infinity * (1.0 + tol) &&
                                        sum.per_infinity <= std::numbers::sqrt2 * sum.per * (1.0 + tol)}};
  out.files.push_back({"perimeter.csv", csv.str()});
  return out;
}

CommandOutput cmd_bounds(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  std::vector<double> ratios{4, 8, 16};
  if (cfg.contains("ratios")) ratios = config::get_doubles(cfg, "ratios");
  out.resolved_config["ratios"] = ratios;
  Csv csv("trial,kind,ratio,check,lhs,rhs,holds");
  json reports = json::array();
  std::int64_t checks = 0, failures = 0;

  auto record = [&](int trial, const std::string& kind, double ratio, const entanglement::BoundReport& r) {
    for (const auto& c : r.checks) {
      csv.row(trial, kind, ratio, c.name, c.lhs, c.rhs, c.holds ? 1 : 0);
      ++checks;
      failures += c.holds ? 0 : 1;
    }
  };

  if (cfg.contains("random")) {
    const auto& rnd = cfg.at("random");
    const auto trials = config::get_int(rnd, "trials", 500);
    const auto seed = config::get_seed(rnd, "seed", 1);
    const double h = config::get_double(rnd, "h", 1.0);
    const auto interior = config::get_int(rnd, "interior_cells", 192);
    out.seed = seed;
    out.resolved_config["random"] = {{"trials", trials}, {"seed", seed}, {"h", h}, {"interior_cells", interior}};
    const int max_ratio = static_cast<int>(*std::max_element(ratios.begin(), ratios.end()));
    for (int t = 0; t < trials; ++t) {
      const auto fixture = entanglement::random_truth(seed + static_cast<std::uint64_t>(t), h, max_ratio,
                                                      static_cast<int>(interior));
      for (const double k : ratios) {
        record(t, fixture.kind, k, entanglement::verify_bounds(fixture.truth, k * h, fixture.window));
      }
    }
  } else {
    const Subject s = read_subject(json{{"shape", config::require(cfg, "shape")}});
    const double h = config::get_double(cfg, "h");
    const int max_ratio = static_cast<int>(*std::max_element(ratios.begin(), ratios.end()));
    const auto lat = lattice::Lattice::covering(s.set.bounding_box(), h, max_ratio + 2);
    const auto truth = lattice::digitize(s.set, lat);
    std::optional<shapes::PolyRectangle> window;
    if (cfg.contains("window")) window = shapes::make_polyrect(cfg.at("window"));
    std::string pairs;
    for (const double k : ratios) {
      const auto r = entanglement::verify_bounds(truth, k * h, window);
      record(0, "shape", k, r);
      auto j = entanglement::to_json(r);
      j["ratio"] = k;
      reports.push_back(j);
      const entanglement::Resolution res(truth, k * h);
      const auto interior = entanglement::detect_interior_pairs(truth, k * h);
      std::vector<const entanglement::PairSet*> sets{&interior};
      entanglement::PairSet boundary;
      if (window) {
        boundary = entanglement::detect_boundary_pairs(truth, k * h, *window);
        sets.push_back(&boundary);
      }
      pairs += entanglement::pairs_csv(res, sets, pairs.empty());
    }
    out.files.push_back({"pairs.csv", pairs});
  }
  out.results = {{"checks", checks}, {"failures", failures}, {"all_hold", failures == 0}, {"reports", reports}};
  out.files.push_back({"bounds.csv", csv.str()});
  return out;
}

CommandOutput cmd_shotnoise(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  const auto model = randomsets::model_from_json(config::require(cfg, "model"));
  const auto window = shapes::make_polyrect(config::require(cfg, "window"));
  const auto replicates = config::get_int(cfg, "replicates", 2000);
  const auto seed = config::get_seed(cfg, "seed", 1);
  randomsets::ClosedFormOptions opt;
  opt.crossing_weight = config::get_double(cfg, "crossing_weight", opt.crossing_weight);
  out.seed = seed;
  out.resolved_config["model"] = randomsets::to_json(model);
  out.resolved_config["replicates"] = replicates;
  out.resolved_config["seed"] = seed;
  out.resolved_config["crossing_weight"] = opt.crossing_weight;

  const auto probs = randomsets::level_probabilities(model);
  const double closed = randomsets::mean_chi_closed_form(model, window, opt);
  const auto mc = randomsets::mc_mean_chi(model, window, static_cast<int>(replicates), seed);
  const double z = mc.stderr_ > 0.0 ? (mc.mean - closed) / mc.stderr_ : 0.0;
  out.results = {{"closed_form", closed},
                 {"p1", probs.p1},
                 {"p2", probs.p2},
                 {"p2_prime", probs.p2_prime},
                 {"p_above", probs.p_above},
                 {"level_tie", probs.level_tie},
                 {"mc_mean", mc.mean},
                 {"mc_stderr", mc.stderr_},
                 {"z", z},
                 {"within_3_stderr", std::abs(mc.mean - closed) <= 3.0 * mc.stderr_},
                 {"mc_mean_per_infinity", mc.mean_per_inf},
                 {"mc_mean_vol", mc.mean_vol}};
  try {
    out.results["boolean_closed_form"] = randomsets::boolean_mean_chi(model, window, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotBooleanRegime) throw;
    out.results["boolean_closed_form"] = nullptr;
  }
  Csv csv("seed,chi,per_inf,vol");
  for (const auto& r : mc.log) csv.row(r.seed, r.chi, r.per_inf, r.vol);
  out.files.push_back({"replicates.csv", csv.str()});
  return out;
}

CommandOutput cmd_densities(const json& cfg) {
  CommandOutput out;
  out.resolved_config = cfg;
  const auto model = randomsets::model_from_json(config::require(cfg, "model"));
  const double eps = config::get_double(cfg, "epsilon");
  const Rect window = config::get_rect(cfg, "window");
  const auto replicates = config::get_int(cfg, "replicates", 200);
  const auto seed = config::get_seed(cfg, "seed", 1);
  out.seed = seed;
  out.resolved_config["model"] = randomsets::to_json(model);
  out.resolved_config["replicates"] = replicates;
  out.resolved_config["seed"] = seed;

  const auto d = randomsets::estimate_stationary_densities(model, eps, window, static_cast<int>(replicates), seed);
  const auto cf = randomsets::closed_form_densities(model);
  out.results = {{"chi_bar", d.chi_bar},
                 {"chi_bar_stderr", d.chi_bar_stderr},
                 {"per_bar_u1", d.per_bar_u1},
                 {"per_bar_u1_stderr", d.per_bar_u1_stderr},
                 {"per_bar_u2", d.per_bar_u2},
                 {"per_bar_u2_stderr", d.per_bar_u2_stderr},
                 {"vol_bar", d.vol_bar},
                 {"vol_bar_stderr", d.vol_bar_stderr},
                 {"epsilon_used", d.epsilon_used},
                 {"closed_form", {{"chi_bar", cf.chi_bar},
                                  {"per_bar_u1", cf.per_bar_u1},
                                  {"per_bar_u2", cf.per_bar_u2},
                                  {"vol_bar", cf.vol_bar}}}};
  Csv csv("quantity,estimate,stderr,closed_form");
  csv.row("chi_bar", d.chi_bar, d.chi_bar_stderr, cf.chi_bar);
  csv.row("per_bar_u1", d.per_bar_u1, d.per_bar_u1_stderr, cf.per_bar_u1);
  csv.row("per_bar_u2", d.per_bar_u2, d.per_bar_u2_stderr, cf.per_bar_u2);
  csv.row("vol_bar", d.vol_bar, d.vol_bar_stderr, cf.vol_bar);
  out.files.push_back({"densities.csv", csv.str()});
  return out;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {"chi", "digitize a shape and report its discrete Euler characteristic", cmd_chi},
      {"sweep", "Euler characteristic over an epsilon schedule, with plateau detection", cmd_sweep},
      {"perimeter", "directional, Per_infinity and isotropic perimeter estimates", cmd_perimeter},
      {"bounds", "entanglement-pair component bounds on fixtures or random truth sets", cmd_bounds},
      {"shotnoise", "closed-form mean Euler characteristic against Monte Carlo", cmd_shotnoise},
      {"densities", "stationary densities of a shot-noise level set", cmd_densities},
  };
  return table;
}

}  // namespace eulergram::cli

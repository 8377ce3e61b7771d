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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulergram/geometry.hpp"
#include "eulergram/shapes.hpp"

namespace eulergram::randomsets {

struct GrainAtom {
  shapes::PolyRectangle grain;  // relative to its germ
  double p = 1.0;
};

// Law of one side of a parametric rectangle grain [0,A] x [0,B].
struct SideLaw {
  enum class Kind { kConstant, kUniform, kExponential };
  Kind kind = Kind::kConstant;
  double a = 1.0;  // constant value, uniform min, or exponential rate
  double b = 1.0;  // uniform max
};

struct ParametricGrain {
  SideLaw width;
  SideLaw height;
  // Exponential sides are redrawn above this length; the discarded mass is
  // reported by `truncated_mass`.
  std::optional<double> cutoff;
};

struct MarkAtom {
  double value = 1.0;
  double p = 1.0;
};

struct MarkLaw {
  enum class Kind { kAtoms, kExponential, kUniform };
  Kind kind = Kind::kAtoms;
  std::vector<MarkAtom> atoms;
  double a = 1.0;  // exponential rate or uniform min
  double b = 1.0;  // uniform max
};

struct ShotNoiseModel {
  double intensity = 1.0;
  std::vector<GrainAtom> grains;          // used when `family` is empty
  std::optional<ParametricGrain> family;  // parametric rectangles
  MarkLaw marks;
  double level = 0.5;

  // Throws InvalidSpec on malformed laws and UnboundedGrain when the grain
  // extent has no bound.
  void validate() const;
  // Largest |coordinate| of a grain relative to its germ.
  double grain_extent() const;
};

ShotNoiseModel model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ShotNoiseModel& m);

struct Germ {
  Vec2 location;
  std::vector<Rect> rects;  // translated grain
  double mark = 1.0;
};

struct Realization {
  std::vector<Germ> germs;
  Rect domain;
  Rect padded;
  std::uint64_t poisson_count = 0;  // germs drawn on the padded domain
  double padding = 0.0;
};

Realization sample_realization(const ShotNoiseModel& model, const Rect& domain, std::uint64_t seed);

struct LevelSetGeometry {
  std::int64_t chi = 0;
  double per1 = 0.0;
  double per2 = 0.0;
  double vol = 0.0;
  double per_infinity() const { return per1 + per2; }
};

// Exact geometry of {f >= level} cap V on the cell arrangement. Throws
// DegenerateArrangement when two distinct coordinates nearly coincide.
LevelSetGeometry level_set_geometry(const Realization& real, double level,
                                    const shapes::PolyRectangle& window);
std::int64_t level_set_chi_exact(const Realization& real, double level,
                                 const shapes::PolyRectangle& window);

struct GrainMoments {
  double e_chi = 0.0;
  double e_per1 = 0.0;
  double e_per2 = 0.0;
  double e_vol = 0.0;
  double truncated_mass = 0.0;
};

GrainMoments grain_moments(const ShotNoiseModel& model);

// Laws of f(0) and the level-crossing probabilities built on it.
struct LevelProbabilities {
  double p1 = 0.0;        // P(level - M1 <= f(0) < level)
  double p2 = 0.0;        // P(level - M1 - M2 <= f(0) < level - max(M1, M2))
  double p2_prime = 0.0;  // P(level - max(M1, M2) <= f(0) < level)
  double p_above = 0.0;   // P(f(0) >= level)
  bool level_tie = false; // the level coincides with an achievable atom sum
};

LevelProbabilities level_probabilities(const ShotNoiseModel& model);

struct ClosedFormOptions {
  // Weight of (p2 - p2') E Per1 E Per2 in the volume density.
  double crossing_weight = 0.5;
};

struct Densities {
  double chi_bar = 0.0;
  double per_bar_u1 = 0.0;
  double per_bar_u2 = 0.0;
  double vol_bar = 0.0;
};

Densities closed_form_densities(const ShotNoiseModel& model, const ClosedFormOptions& opt = {});

// Vol(V) chi_bar + chi(V) vol_bar + (1/4)(Per1(V) per_bar_u2 + Per2(V) per_bar_u1).
double mean_chi_closed_form(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                            const ClosedFormOptions& opt = {});
// Requires unit marks and a level in (0, 1); NotBooleanRegime otherwise.
double boolean_mean_chi(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                        const ClosedFormOptions& opt = {});

struct ReplicateRecord {
  std::uint64_t seed = 0;
  std::int64_t chi = 0;
  double per_inf = 0.0;
  double vol = 0.0;
};

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  double mean_per_inf = 0.0;
  double mean_vol = 0.0;
  std::vector<ReplicateRecord> log;
};

// Replicate i uses seed + i. Throws InvalidArgument for fewer than two.
MonteCarloResult mc_mean_chi(const ShotNoiseModel& model, const shapes::PolyRectangle& window,
                             int replicates, std::uint64_t seed);

struct StationaryDensities {
  double chi_bar = 0.0;
  double per_bar_u1 = 0.0;
  double per_bar_u2 = 0.0;
  double vol_bar = 0.0;
  double epsilon_used = 0.0;
  double chi_bar_stderr = 0.0;
  double per_bar_u1_stderr = 0.0;
  double per_bar_u2_stderr = 0.0;
  double vol_bar_stderr = 0.0;
  int replicates = 0;
};

// Spatial pattern probabilities at scale epsilon, exact per realization.
StationaryDensities estimate_stationary_densities(const ShotNoiseModel& model, double epsilon,
                                                  const Rect& window, int replicates,
                                                  std::uint64_t seed);

}  // namespace eulergram::randomsets

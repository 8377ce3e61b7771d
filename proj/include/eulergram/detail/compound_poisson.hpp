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

#include <vector>

namespace eulergram::detail {

// Finitely supported law: sorted distinct values with their probabilities.
struct DiscreteLaw {
  std::vector<double> values;
  std::vector<double> probs;

  // P(lo <= X < hi), endpoints matched with a relative tolerance so that
  // float round-off in atom sums does not move mass across a threshold.
  double prob_in(double lo, double hi) const;
  double prob_at_least(double lo) const;
  // Whether some support point lies within tolerance of x.
  bool has_atom_near(double x) const;
};

// Law of sum_a v_a N_a with independent N_a ~ Poisson(mean_a), truncated so
// that the discarded mass is below `tail`.
DiscreteLaw compound_poisson(const std::vector<double>& atom_values,
                             const std::vector<double>& atom_means, double tail = 1e-12);

}  // namespace eulergram::detail

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

#include "eulergram/detail/compound_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eulergram::detail {
namespace {

double tol_for(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

void normalize(DiscreteLaw& law) {
  std::vector<std::size_t> order(law.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return law.values[a] < law.values[b]; });
  DiscreteLaw out;
  for (const std::size_t k : order) {
    const double v = law.values[k];
    if (!out.values.empty() && v - out.values.back() <= tol_for(v)) {
      out.probs.back() += law.probs[k];
    } else {
      out.values.push_back(v);
      out.probs.push_back(law.probs[k]);
    }
  }
  law = std::move(out);
}

// Poisson(mu) weights for n = 0, 1, ... until the remaining mass is below tail.
std::vector<double> poisson_weights(double mu, double tail) {
  std::vector<double> w;
  if (mu <= 0.0) return {1.0};
  double acc = 0.0;
  const double log_mu = std::log(mu);
  for (int n = 0;; ++n) {
    const double p = std::exp(-mu + n * log_mu - std::lgamma(n + 1.0));
    w.push_back(p);
    acc += p;
    if (n > mu && 1.0 - acc < tail) break;
    if (n > mu + 50.0 * std::sqrt(mu) + 200.0) break;
  }
  return w;
}

}  // namespace

double DiscreteLaw::prob_in(double lo, double hi) const {
  double p = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (v >= lo - tol_for(lo) && v < hi - tol_for(hi)) p += probs[k];
  }
  return p;
}

double DiscreteLaw::prob_at_least(double lo) const {
  double p = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= lo - tol_for(lo)) p += probs[k];
  }
  return p;
}

bool DiscreteLaw::has_atom_near(double x) const {
  return std::any_of(values.begin(), values.end(),
                     [x](double v) { return std::abs(v - x) <= tol_for(x); });
}

DiscreteLaw compound_poisson(const std::vector<double>& atom_values,
                             const std::vector<double>& atom_means, double tail) {
  DiscreteLaw law{{0.0}, {1.0}};
  const double per_atom = tail / static_cast<double>(std::max<std::size_t>(1, atom_values.size()));
  for (std::size_t a = 0; a < atom_values.size(); ++a) {
    const auto w = poisson_weights(atom_means[a], per_atom);
    DiscreteLaw next;
    for (std::size_t n = 0; n < w.size(); ++n) {
      for (std::size_t k = 0; k < law.values.size(); ++k) {
        next.values.push_back(law.values[k] + static_cast<double>(n) * atom_values[a]);
        next.probs.push_back(law.probs[k] * w[n]);
      }
    }
    normalize(next);
    law = std::move(next);
  }
  return law;
}

}  // namespace eulergram::detail

// Copyright 2025 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "submax/rounding.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "submax/check.hpp"
#include "submax/multilinear.hpp"
#include "submax/rng.hpp"

namespace submax {

namespace {

// The base matroid extended by free elements with ids >= ground_size.
// A set is independent iff its real part is.
class ColoopExtension : public MatroidOracle {
 public:
  ColoopExtension(const MatroidOracle& base, int dummy_count)
      : MatroidOracle(base.ground_size() + dummy_count,
                      base.rank_total() + dummy_count),
        base_(base) {}

 protected:
  bool independent_impl(const ElementSet& s) const override {
    ElementSet real;
    real.reserve(s.size());
    for (ElementId e : s) {
      if (e < base_.ground_size()) real.push_back(e);
    }
    return base_.is_independent(real);
  }

 private:
  const MatroidOracle& base_;
};

}  // namespace

void validate_combination(const MatroidOracle& m, const ConvexCombination& c) {
  double total = 0.0;
  for (const WeightedSet& ws : c) {
    if (ws.weight <= 0.0) {
      throw std::invalid_argument("combination weights must be positive");
    }
    if (!m.is_independent(ws.elements)) {
      throw std::invalid_argument("combination lists a dependent set");
    }
    total += ws.weight;
  }
  if (total > 1.0 + kCmpTol) {
    throw std::invalid_argument("combination weights exceed 1");
  }
}

FractionalPoint combination_point(const ConvexCombination& c) {
  FractionalPoint x;
  for (const WeightedSet& ws : c) {
    for (ElementId e : ws.elements) x.add(e, ws.weight);
  }
  return x;
}

ElementSet swap_round(const MatroidOracle& m, const ConvexCombination& c,
                      std::uint64_t seed) {
  validate_combination(m, c);

  double total = 0.0;
  std::size_t target = 0;
  for (const WeightedSet& ws : c) {
    total += ws.weight;
    target = std::max(target, ws.elements.size());
  }

  // Pad every listed set (and the deficit's empty set) with fresh dummies
  // to the common size, so all operands are bases of the truncated
  // extension.
  std::vector<WeightedSet> lifted;
  lifted.reserve(c.size() + 1);
  ElementId next_dummy = m.ground_size();
  auto lift = [&](const ElementSet& s, double w) {
    WeightedSet ws{s, w};
    while (ws.elements.size() < target) ws.elements.push_back(next_dummy++);
    lifted.push_back(std::move(ws));
  };
  for (const WeightedSet& ws : c) lift(ws.elements, ws.weight);
  if (total < 1.0 - kCmpTol) lift({}, 1.0 - total);

  if (lifted.empty()) return {};

  ColoopExtension extended(m, next_dummy - m.ground_size());
  Rng rng(seed);

  ElementSet merged = lifted[0].elements;
  double merged_weight = lifted[0].weight;
  for (std::size_t k = 1; k < lifted.size(); ++k) {
    ElementSet other = lifted[k].elements;
    double other_weight = lifted[k].weight;
    while (true) {
      ElementSet only_merged = set_sorted(set_difference(merged, other));
      if (only_merged.empty()) break;
      ElementId u = only_merged.front();
      ElementId v = basis_exchange(extended, merged, other, u);
      if (rng.next_unit() < merged_weight / (merged_weight + other_weight)) {
        other = set_plus(set_minus(other, v), u);
      } else {
        merged = set_plus(set_minus(merged, u), v);
      }
    }
    merged_weight += other_weight;
  }

  ElementSet result;
  for (ElementId e : merged) {
    if (e < m.ground_size()) result.push_back(e);
  }
  result = set_sorted(result);
  SUBMAX_CHECK(m.is_independent(result), "swap_round output not independent");
  return result;
}

ElementSet round_best_of(const MatroidOracle& m, const ConvexCombination& c,
                         const SubmodularOracle& f, int trials,
                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate_combination(m, c);

  ElementSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](const ElementSet& s) {
    double v = f.value(s);
    if (v > best_value) {
      best_value = v;
      best = s;
    }
  };
  for (const WeightedSet& ws : c) consider(set_sorted(ws.elements));
  for (int t = 0; t < trials; ++t) {
    consider(swap_round(m, c, mix64(seed, static_cast<std::uint64_t>(t))));
  }
  return best;
}

}  // namespace submax

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
//
// Randomized swap rounding: turns an explicit convex combination of
// independent sets into one independent set whose expected value under any
// submodular objective is at least the multilinear value of the point.

#ifndef SUBMAX_ROUNDING_HPP_
#define SUBMAX_ROUNDING_HPP_

#include <cstdint>
#include <vector>

#include "submax/matroid.hpp"
#include "submax/objective.hpp"

namespace submax {

struct WeightedSet {
  ElementSet elements;
  double weight = 0.0;
};

// Point of the matroid polytope given as sum of weight * 1_set with every
// set independent and total weight <= 1; a deficit is weight on the empty
// set.
using ConvexCombination = std::vector<WeightedSet>;

// Throws std::invalid_argument unless every set is independent, weights are
// positive, and they total at most 1 (+ tolerance).
void validate_combination(const MatroidOracle& m, const ConvexCombination& c);

// The fractional point represented by the combination.
class FractionalPoint;
FractionalPoint combination_point(const ConvexCombination& c);

// One randomized swap-rounding pass. Listed sets are lifted to a common
// size with dummy coloop elements (independent of everything, zero
// f-marginal) and merged pairwise; dummies are stripped from the output.
// Preserves per-element marginals and E[f(R)] >= F(point).
ElementSet swap_round(const MatroidOracle& m, const ConvexCombination& c,
                      std::uint64_t seed);

// Best of `trials` swap-rounding outputs and of the listed sets themselves.
ElementSet round_best_of(const MatroidOracle& m, const ConvexCombination& c,
                         const SubmodularOracle& f, int trials,
                         std::uint64_t seed);

}  // namespace submax

#endif  // SUBMAX_ROUNDING_HPP_

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
// Two-player one-way protocol for monotone maximization under a matroid:
// Alice condenses her half of the ground set into O(k) elements (her local
// optimum, a discretized continuous-greedy support, and a best completion
// set W), Bob exhaustively optimizes over the message plus his half.
// Exhaustive steps cap the instance size; this is a desk-scale component.

#ifndef SUBMAX_TWO_PLAYER_HPP_
#define SUBMAX_TWO_PLAYER_HPP_

#include <functional>
#include <utility>

#include "submax/matroid.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"

namespace submax {

struct TwoPlayerInstance {
  const MatroidOracle* matroid = nullptr;
  const CoverageFunction* objective = nullptr;  // exact F is required
  ElementSet alice_elements;                    // N_A
  ElementSet bob_elements;                      // N_B
  int steps = 125;                              // h; below 125 no guarantee
  int enumeration_cap = 16;

  void validate() const;
};

struct AliceMessage {
  ElementSet local_optimum;             // OPT(N_A)
  ElementSet completion;                // W
  std::vector<ElementSet> greedy_sets;  // C_1 .. C_h
  ElementSet sent;                      // Q = union of the above
};

AliceMessage alice(const TwoPlayerInstance& inst);

ElementSet bob(const AliceMessage& msg, const TwoPlayerInstance& inst);

// Exhaustive argmax of `score` over independent subsets of `universe`,
// visited in increasing cardinality then lexicographic order with
// downward-closure pruning; ties keep the first set visited, i.e. the
// (cardinality, lexicographic) smallest. `score` must be deterministic.
std::pair<ElementSet, double> argmax_independent(
    const MatroidOracle& m, const ElementSet& universe,
    const std::function<double(const ElementSet&)>& score);

}  // namespace submax

#endif  // SUBMAX_TWO_PLAYER_HPP_

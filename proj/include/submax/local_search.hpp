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
// Streaming local search over bases: a single swap pass that trades each
// arriving element against the cheapest member of its circuit, and a
// multi-pass driver that repeats swap passes until the gain per pass falls
// below a fixed fraction of the first pass's value.

#ifndef SUBMAX_LOCAL_SEARCH_HPP_
#define SUBMAX_LOCAL_SEARCH_HPP_

#include <vector>

#include "submax/matroid.hpp"
#include "submax/objective.hpp"

namespace submax {

struct SwapPassRecord {
  double swap_ratio = 0.0;  // the pass's c
  ElementSet start;         // S_0
  ElementSet result;        // S_n
  double start_value = 0.0;
  double result_value = 0.0;
};

// One streaming swap pass (swap ratio c > 1) starting from base `start`.
// `stream` must list N \ start exactly once, in arrival order. Maintains a
// base throughout; f(S_i) never decreases. If `record` is non-null the
// pass endpoints are written there.
ElementSet local_search_pass(const MatroidOracle& m, const SubmodularOracle& f,
                             const ElementSet& start, double swap_ratio,
                             const std::vector<ElementId>& stream,
                             SwapPassRecord* record = nullptr);

struct MultiPassResult {
  ElementSet solution;                 // output base T
  int passes = 0;                      // total stream passes incl. T_0's
  double first_pass_gain = 0.0;        // f(T_1 | empty)
  std::vector<SwapPassRecord> trace;   // every swap pass, in order
};

// Multi-pass driver: greedy base T_0, one c = 2 pass, then c = 1 + delta
// passes until the improvement drops to delta^2 * f(T_1 | empty). The
// budget of 1 + ceil(4/delta^2) improvement passes is provably sufficient;
// exhausting it throws std::logic_error. `order` is the replayable stream
// of the whole ground set.
MultiPassResult multi_pass_local_search(const MatroidOracle& m,
                                        const SubmodularOracle& f,
                                        double delta,
                                        const std::vector<ElementId>& order);

}  // namespace submax

#endif  // SUBMAX_LOCAL_SEARCH_HPP_

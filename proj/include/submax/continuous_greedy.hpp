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
// Multi-pass continuous greedy machinery: the direction-finding procedure
// that runs multi-pass local search on the shifted objective
// g(S) = F(x + eps * 1_S), the streaming continuous greedy built from it,
// and the step-discretized continuous greedy used by the two-player
// protocol.

#ifndef SUBMAX_CONTINUOUS_GREEDY_HPP_
#define SUBMAX_CONTINUOUS_GREEDY_HPP_

#include <cstdint>
#include <vector>

#include "submax/local_search.hpp"
#include "submax/matroid.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/rounding.hpp"

namespace submax {

// g(S) = F(x + step * 1_S) for a base point x with coordinates at most
// 1 - step. Non-negative, submodular, and monotone whenever f is.
class SurrogateObjective : public SubmodularOracle {
 public:
  SurrogateObjective(const MultilinearEvaluator& evaluator,
                     FractionalPoint base, double step);

 protected:
  double value_impl(const ElementSet& s) const override;

 private:
  MultilinearEvaluator evaluator_;
  FractionalPoint base_;
  double step_;
};

struct AcgRoundResult {
  ElementSet direction;  // base D
  int passes = 0;
  std::vector<SwapPassRecord> trace;  // swap passes on the surrogate
};

// One direction-finding round: multi-pass local search with
// delta = 3*eps/25 on the surrogate g built over the evaluator's oracle.
// `weight_total` is the decomposition weight of x and must be at most
// 1 - eps (the polytope membership witness).
AcgRoundResult acg_procedure(const FractionalPoint& x, double weight_total,
                             double eps, const MatroidOracle& m,
                             const MultilinearEvaluator& evaluator,
                             const std::vector<ElementId>& order);

struct DscgConfig {
  double epsilon = 0.1;  // in (0, 1 - 1/e)
  int round_trials = 32;
  std::uint64_t seed = 0;

  int rounds() const { return static_cast<int>(1.0 / epsilon); }
  double delta() const { return 3.0 * epsilon / 25.0; }
};

struct DscgRound {
  FractionalPoint before;  // x entering the round
  FractionalPoint after;   // x' = x + eps * 1_D
  ElementSet direction;
  double value_before = 0.0;  // F(x)
  double value_after = 0.0;   // F(x')
  int passes = 0;
  std::vector<SwapPassRecord> trace;  // swap passes on the surrogate
};

struct DscgResult {
  ElementSet solution;  // rounded R
  double value = 0.0;   // f(R)
  FractionalPoint point;
  ConvexCombination combination;  // {(D_t, eps)}
  std::vector<DscgRound> rounds;
  int total_passes = 0;
};

// Data stream continuous greedy: floor(1/eps) rounds of acg_procedure,
// each moving x by eps toward the returned base, then best-of rounding of
// the resulting combination. Requires a monotone objective.
DscgResult dscg(const DscgConfig& cfg, const MatroidOracle& m,
                const SubmodularOracle& f,
                const MultilinearEvaluator& evaluator,
                const std::vector<ElementId>& order);

// Step-discretized continuous greedy restricted to S: h rounds, each
// greedily growing a set C_i in I cap 2^S to rank(S) by the largest
// F-gain, with x advancing by 1_{C_i}/h. Ties break toward the lowest id.
std::vector<ElementSet> discretized_continuous_greedy(
    const MatroidOracle& m, const ElementSet& s, int h,
    const MultilinearEvaluator& evaluator);

}  // namespace submax

#endif  // SUBMAX_CONTINUOUS_GREEDY_HPP_

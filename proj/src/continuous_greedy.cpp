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

#include "submax/continuous_greedy.hpp"

#include <stdexcept>

#include "submax/check.hpp"
#include "submax/rng.hpp"

namespace submax {

SurrogateObjective::SurrogateObjective(const MultilinearEvaluator& evaluator,
                                       FractionalPoint base, double step)
    : SubmodularOracle(evaluator.oracle().ground_size(),
                       evaluator.oracle().is_monotone()),
      evaluator_(evaluator),
      base_(std::move(base)),
      step_(step) {
  if (!(step > 0.0) || step > 1.0) {
    throw std::invalid_argument("surrogate step must lie in (0, 1]");
  }
  for (const auto& [e, v] : base_.coords()) {
    if (v > 1.0 - step + kCmpTol) {
      throw std::invalid_argument(
          "surrogate base point has a coordinate above 1 - step");
    }
  }
}

double SurrogateObjective::value_impl(const ElementSet& s) const {
  return evaluator_.value(base_.plus_indicator(s, step_));
}

AcgRoundResult acg_procedure(const FractionalPoint& x, double weight_total,
                             double eps, const MatroidOracle& m,
                             const MultilinearEvaluator& evaluator,
                             const std::vector<ElementId>& order) {
  if (!(eps > 0.0) || eps >= 1.0) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  if (weight_total > 1.0 - eps + kCmpTol) {
    throw std::invalid_argument("x must lie in (1 - eps) * P_M");
  }
  SurrogateObjective surrogate(evaluator, x, eps);
  double delta = 3.0 * eps / 25.0;
  MultiPassResult inner = multi_pass_local_search(m, surrogate, delta, order);
  AcgRoundResult out;
  out.direction = set_sorted(inner.solution);
  out.passes = inner.passes;
  out.trace = std::move(inner.trace);
  return out;
}

DscgResult dscg(const DscgConfig& cfg, const MatroidOracle& m,
                const SubmodularOracle& f,
                const MultilinearEvaluator& evaluator,
                const std::vector<ElementId>& order) {
  constexpr double kOneMinusInvE = 0.6321205588285577;
  if (!(cfg.epsilon > 0.0) || cfg.epsilon >= kOneMinusInvE) {
    throw std::invalid_argument("epsilon must lie in (0, 1 - 1/e)");
  }
  if (!f.is_monotone()) {
    throw std::invalid_argument("dscg requires a monotone objective");
  }

  DscgResult result;
  FractionalPoint x;
  double eps = cfg.epsilon;
  int rounds = cfg.rounds();
  for (int t = 1; t <= rounds; ++t) {
    DscgRound round;
    round.before = x;
    round.value_before = evaluator.value(x);

    double weight_total = eps * static_cast<double>(t - 1);
    AcgRoundResult dir = acg_procedure(x, weight_total, eps, m,
                                       evaluator.reseeded(mix64(cfg.seed, t)),
                                       order);
    SUBMAX_CHECK(static_cast<int>(dir.direction.size()) == m.rank_total(),
                 "direction is not a base");

    x = x.plus_indicator(dir.direction, eps);
    for (const auto& [e, v] : x.coords()) {
      SUBMAX_CHECK(v <= eps * static_cast<double>(t) + kCmpTol,
                   "coordinate exceeds t * eps");
    }
    result.combination.push_back({dir.direction, eps});

    round.after = x;
    round.value_after = evaluator.value(x);
    round.direction = dir.direction;
    round.passes = dir.passes;
    round.trace = std::move(dir.trace);
    result.total_passes += dir.passes;
    result.rounds.push_back(std::move(round));
  }

  result.point = x;
  result.solution =
      round_best_of(m, result.combination, f, cfg.round_trials, cfg.seed);
  result.value = f.value(result.solution);
  return result;
}

std::vector<ElementSet> discretized_continuous_greedy(
    const MatroidOracle& m, const ElementSet& s, int h,
    const MultilinearEvaluator& evaluator) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  int target_rank = rank(m, s);
  ElementSet candidates = set_sorted(s);
  double step = 1.0 / static_cast<double>(h);

  std::vector<ElementSet> rounds;
  rounds.reserve(h);
  FractionalPoint x;
  for (int i = 0; i < h; ++i) {
    ElementSet chosen;
    while (static_cast<int>(chosen.size()) < target_rank) {
      ElementId best = -1;
      double best_value = 0.0;
      for (ElementId e : candidates) {
        if (set_contains(chosen, e)) continue;
        ElementSet extended = set_plus(chosen, e);
        if (!m.is_independent(extended)) continue;
        double v = evaluator.value(x.plus_indicator(extended, step));
        if (best < 0 || v > best_value) {  // lowest id wins ties
          best = e;
          best_value = v;
        }
      }
      SUBMAX_CHECK(best >= 0, "no feasible element before reaching rank(S)");
      chosen.push_back(best);
    }
    x = x.plus_indicator(chosen, step);
    rounds.push_back(std::move(chosen));  // in pick order
  }
  return rounds;
}

}  // namespace submax

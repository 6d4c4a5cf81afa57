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

#include "submax/two_player.hpp"

#include <stdexcept>
#include <string>

#include "submax/check.hpp"
#include "submax/continuous_greedy.hpp"

namespace submax {

void TwoPlayerInstance::validate() const {
  if (matroid == nullptr || objective == nullptr) {
    throw std::invalid_argument("two-player instance is incomplete");
  }
  if (matroid->ground_size() != objective->ground_size()) {
    throw std::invalid_argument("matroid and objective ground sizes differ");
  }
  if (steps < 1) throw std::invalid_argument("h must be >= 1");
  std::vector<std::uint8_t> side(matroid->ground_size(), 0);
  for (ElementId e : alice_elements) {
    if (e < 0 || e >= matroid->ground_size() || side[e] != 0) {
      throw std::invalid_argument("bad partition of the ground set");
    }
    side[e] = 1;
  }
  for (ElementId e : bob_elements) {
    if (e < 0 || e >= matroid->ground_size() || side[e] != 0) {
      throw std::invalid_argument("bad partition of the ground set");
    }
    side[e] = 2;
  }
  for (std::uint8_t s : side) {
    if (s == 0) throw std::invalid_argument("partition must cover N");
  }
}

std::pair<ElementSet, double> argmax_independent(
    const MatroidOracle& m, const ElementSet& universe,
    const std::function<double(const ElementSet&)>& score) {
  ElementSet sorted_universe = set_sorted(universe);
  ElementSet best;
  double best_value = score(best);

  // Level-by-level: extending lexicographically ordered independent sets
  // by strictly larger ids keeps each level lexicographically ordered, and
  // dependent sets are never extended (downward closure).
  std::vector<ElementSet> level = {{}};
  while (!level.empty()) {
    std::vector<ElementSet> next;
    for (const ElementSet& s : level) {
      ElementId floor = s.empty() ? -1 : s.back();
      for (ElementId e : sorted_universe) {
        if (e <= floor) continue;
        ElementSet extended = set_plus(s, e);
        if (!m.is_independent(extended)) continue;
        double v = score(extended);
        if (v > best_value) {
          best_value = v;
          best = extended;
        }
        next.push_back(std::move(extended));
      }
    }
    level = std::move(next);
  }
  return {best, best_value};
}

AliceMessage alice(const TwoPlayerInstance& inst) {
  inst.validate();
  if (static_cast<int>(inst.alice_elements.size()) > inst.enumeration_cap) {
    throw std::runtime_error(
        "alice: |N_A| = " + std::to_string(inst.alice_elements.size()) +
        " exceeds the exhaustive-search cap of " +
        std::to_string(inst.enumeration_cap));
  }
  const MatroidOracle& m = *inst.matroid;
  const CoverageFunction& f = *inst.objective;
  MultilinearEvaluator evaluator = MultilinearEvaluator::exact(f);

  AliceMessage msg;
  msg.local_optimum =
      argmax_independent(m, inst.alice_elements,
                         [&](const ElementSet& s) { return f.value(s); })
          .first;

  msg.greedy_sets =
      discretized_continuous_greedy(m, inst.alice_elements, inst.steps,
                                    evaluator);
  FractionalPoint x;
  double step = 1.0 / static_cast<double>(inst.steps);
  for (const ElementSet& c : msg.greedy_sets) x = x.plus_indicator(c, step);

  msg.completion = argmax_independent(m, inst.alice_elements,
                                      [&](const ElementSet& s) {
                                        return exact_F_coverage(
                                            f, x.max_with_indicator(s));
                                      })
                       .first;

  msg.sent = set_union(msg.local_optimum, msg.completion);
  for (const ElementSet& c : msg.greedy_sets) msg.sent = set_union(msg.sent, c);
  msg.sent = set_sorted(msg.sent);
  SUBMAX_CHECK(static_cast<int>(msg.sent.size()) <=
                   (inst.steps + 2) * m.rank_total(),
               "message larger than (h + 2) * rank");
  return msg;
}

ElementSet bob(const AliceMessage& msg, const TwoPlayerInstance& inst) {
  inst.validate();
  ElementSet pool = set_sorted(set_union(msg.sent, inst.bob_elements));
  if (static_cast<int>(pool.size()) > inst.enumeration_cap) {
    throw std::runtime_error(
        "bob: |Q union N_B| = " + std::to_string(pool.size()) +
        " exceeds the exhaustive-search cap of " +
        std::to_string(inst.enumeration_cap));
  }
  const CoverageFunction& f = *inst.objective;
  return argmax_independent(*inst.matroid, pool,
                            [&](const ElementSet& s) { return f.value(s); })
      .first;
}

}  // namespace submax

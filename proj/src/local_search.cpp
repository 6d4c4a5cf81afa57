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

#include "submax/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "submax/check.hpp"

namespace submax {

ElementSet local_search_pass(const MatroidOracle& m, const SubmodularOracle& f,
                             const ElementSet& start, double swap_ratio,
                             const std::vector<ElementId>& stream,
                             SwapPassRecord* record) {
  if (!(swap_ratio > 1.0)) {
    throw std::invalid_argument("swap ratio must exceed 1");
  }
  if (!m.is_independent(start) ||
      static_cast<int>(start.size()) != m.rank_total()) {
    throw std::invalid_argument("start set must be a base");
  }

  // Arrival indices: the start base occupies 1-|S_0|..0 in ascending id
  // order, stream elements take 1..n as they arrive.
  std::map<ElementId, int> arrival;
  {
    ElementSet s0 = set_sorted(start);
    int idx = 1 - static_cast<int>(s0.size());
    for (ElementId e : s0) arrival[e] = idx++;
  }

  ElementSet current = start;
  double current_value = f.value(current);
  double start_value = current_value;
  int next_index = 1;

  for (ElementId u : stream) {
    if (arrival.count(u) != 0) {
      throw std::invalid_argument(
          "stream must cover N minus the start base exactly once");
    }
    arrival[u] = next_index++;

    // The base spans u, so current + u holds a unique circuit. Ordered
    // marginals of the whole base come from one value chain along the
    // arrival order.
    ElementSet circuit = circuit_of(m, current, u);
    ElementSet by_arrival = current;
    std::sort(by_arrival.begin(), by_arrival.end(),
              [&](ElementId a, ElementId b) { return arrival[a] < arrival[b]; });
    ElementSet prefix;
    double prefix_value = f.value(prefix);
    ElementId cheapest = -1;
    double cheapest_value = 0.0;
    for (ElementId w : by_arrival) {
      prefix.push_back(w);
      double with_w = f.value(prefix);
      double w_marginal = with_w - prefix_value;
      prefix_value = with_w;
      if (w == u || !set_contains(circuit, w)) continue;
      if (cheapest < 0 || w_marginal < cheapest_value) {
        cheapest = w;  // ties keep the earliest arrival
        cheapest_value = w_marginal;
      }
    }
    SUBMAX_CHECK(cheapest >= 0, "circuit contained only the new element");

    double gain = f.value(set_plus(current, u)) - current_value;
    if (approx_ge(gain, swap_ratio * cheapest_value)) {
      current = set_plus(set_minus(current, cheapest), u);
      double swapped_value = f.value(current);
      SUBMAX_CHECK(m.is_independent(current) &&
                       static_cast<int>(current.size()) == m.rank_total(),
                   "solution stopped being a base");
      SUBMAX_CHECK(approx_ge(swapped_value, current_value),
                   "swap decreased the objective");
      current_value = swapped_value;
    }
  }

  if (arrival.size() != static_cast<std::size_t>(m.ground_size())) {
    throw std::invalid_argument(
        "stream must cover N minus the start base exactly once");
  }
  if (record != nullptr) {
    record->swap_ratio = swap_ratio;
    record->start = start;
    record->result = current;
    record->start_value = start_value;
    record->result_value = current_value;
  }
  return current;
}

MultiPassResult multi_pass_local_search(const MatroidOracle& m,
                                        const SubmodularOracle& f,
                                        double delta,
                                        const std::vector<ElementId>& order) {
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }

  MultiPassResult result;

  // Pass 0: greedy base in stream order.
  ElementSet base;
  for (ElementId u : order) {
    ElementSet extended = set_plus(base, u);
    if (m.is_independent(extended)) base = std::move(extended);
  }
  result.passes = 1;
  SUBMAX_CHECK(static_cast<int>(base.size()) == m.rank_total(),
               "greedy pass did not reach a base");

  auto rest_of = [&](const ElementSet& s0) {
    std::vector<ElementId> stream;
    stream.reserve(order.size() - s0.size());
    for (ElementId u : order) {
      if (!set_contains(s0, u)) stream.push_back(u);
    }
    return stream;
  };

  // Pass 1 estimates the optimum with swap ratio 2.
  SwapPassRecord first;
  ElementSet current =
      local_search_pass(m, f, base, 2.0, rest_of(base), &first);
  ++result.passes;
  result.trace.push_back(first);
  double empty_value = f.value({});
  result.first_pass_gain = first.result_value - empty_value;
  double threshold = delta * delta * result.first_pass_gain;
  double current_value = first.result_value;

  long long budget =
      1 + static_cast<long long>(std::ceil(4.0 / (delta * delta)));
  for (long long i = 0; i < budget; ++i) {
    SwapPassRecord rec;
    ElementSet next =
        local_search_pass(m, f, current, 1.0 + delta, rest_of(current), &rec);
    ++result.passes;
    result.trace.push_back(rec);
    SUBMAX_CHECK(approx_ge(rec.result_value, current_value),
                 "pass decreased the objective");
    if (approx_le(rec.result_value - current_value, threshold)) {
      result.solution = current;
      return result;
    }
    current = std::move(next);
    current_value = rec.result_value;
  }
  // Unreachable for a correct oracle: the total gain available is bounded
  // by f(OPT) while every surviving pass gains more than the threshold.
  throw std::logic_error(
      "multi_pass_local_search exhausted its pass budget; "
      "this indicates an oracle or implementation bug");
}

}  // namespace submax

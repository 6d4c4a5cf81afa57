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

#include "submax/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "submax/check.hpp"
#include "submax/rng.hpp"

namespace submax {

int LayeredInstance::ground_size() const {
  int total = 0;
  for (const Layer& layer : layers) {
    total += static_cast<int>(layer.edges.size()) * copies;
  }
  return total;
}

ElementId LayeredInstance::element_id(int layer, int edge, int copy) const {
  int offset = 0;
  for (int i = 0; i < layer; ++i) {
    offset += static_cast<int>(layers[i].edges.size()) * copies;
  }
  return offset + edge * copies + (copy - 1);
}

std::tuple<int, int, int> LayeredInstance::locate(ElementId e) const {
  int rest = e;
  for (int i = 0; i < layer_count(); ++i) {
    int span = static_cast<int>(layers[i].edges.size()) * copies;
    if (rest < span) return {i, rest / copies, rest % copies + 1};
    rest -= span;
  }
  throw std::invalid_argument("element id outside ground set");
}

void LayeredInstance::validate() const {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  if (layers.empty()) throw std::invalid_argument("at least one layer");
  for (const Layer& layer : layers) {
    if (layer.secret_copy < 1 || layer.secret_copy > copies) {
      throw std::invalid_argument("secret copy index outside [1, n]");
    }
    if (!(layer.matching_bound > 0.0)) {
      throw std::invalid_argument("matching bound must be positive");
    }
    if (layer.matching_bound + kCmpTol <
        max_bipartite_matching(layer.edges)) {
      throw std::invalid_argument(
          "matching bound below the true maximum matching");
    }
  }
}

LayeredFamilyFunction::LayeredFamilyFunction(LayeredInstance instance)
    : SubmodularOracle(instance.ground_size(), /*monotone=*/true),
      instance_(std::move(instance)) {
  instance_.validate();
  layer_offset_.assign(instance_.layer_count() + 1, 0);
  for (int i = 0; i < instance_.layer_count(); ++i) {
    layer_offset_[i + 1] =
        layer_offset_[i] +
        static_cast<int>(instance_.layers[i].edges.size()) * instance_.copies;
  }
}

double LayeredFamilyFunction::value_impl(const ElementSet& s) const {
  int p = instance_.layer_count();
  // Two counters per layer: |S cap N_i| and the part avoiding the secret
  // copy. Nothing else about S matters.
  std::vector<int> in_layer(p, 0);
  std::vector<int> off_secret(p, 0);
  for (ElementId e : s) {
    int layer = static_cast<int>(
        std::upper_bound(layer_offset_.begin(), layer_offset_.end(), e) -
        layer_offset_.begin() - 1);
    int within = e - layer_offset_[layer];
    int copy = within % instance_.copies + 1;
    ++in_layer[layer];
    if (copy != instance_.layers[layer].secret_copy) ++off_secret[layer];
  }

  // Fold from the deepest layer upward. Layer index i here is 0-based;
  // the cap for layer i is p - i.
  double value = 0.0;
  for (int i = p - 1; i >= 0; --i) {
    double cap = static_cast<double>(p - i);
    double ratio = in_layer[i] / instance_.layers[i].matching_bound;
    double ratio_off =
        off_secret[i] / instance_.layers[i].matching_bound;
    double folded =
        i == p - 1 ? std::min(1.0, ratio)
                   : std::min(cap, ratio + (1.0 - ratio_off / cap) * value);
    value = folded;
  }
  return value;
}

int max_bipartite_matching(const std::vector<std::pair<int, int>>& edges) {
  int left_max = -1, right_max = -1;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative vertex id");
    left_max = std::max(left_max, a);
    right_max = std::max(right_max, b);
  }
  if (edges.empty()) return 0;
  std::vector<std::vector<int>> adjacent(left_max + 1);
  for (const auto& [a, b] : edges) adjacent[a].push_back(b);

  std::vector<int> matched_left(right_max + 1, -1);
  std::vector<std::uint8_t> visited;
  std::function<bool(int)> augment = [&](int a) {
    for (int b : adjacent[a]) {
      if (visited[b]) continue;
      visited[b] = 1;
      if (matched_left[b] < 0 || augment(matched_left[b])) {
        matched_left[b] = a;
        return true;
      }
    }
    return false;
  };

  int size = 0;
  for (int a = 0; a <= left_max; ++a) {
    visited.assign(right_max + 1, 0);
    if (augment(a)) ++size;
  }
  return size;
}

double matching_bound_power(const std::vector<std::pair<int, int>>& edges,
                            double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  int matching = max_bipartite_matching(edges);
  if (matching == 0) {
    throw std::invalid_argument("layer graph has no edges");
  }
  if (eps == 0.0) return static_cast<double>(matching);
  double bound = 1.0;
  while (bound + kCmpTol < static_cast<double>(matching)) bound *= 1.0 + eps;
  return bound;
}

namespace {

// One maximum matching (as edge indices) recovered greedily: an edge is
// kept iff it increases the max matching of the kept prefix.
std::vector<int> one_max_matching(const std::vector<std::pair<int, int>>& edges) {
  int target = max_bipartite_matching(edges);
  std::vector<int> kept_ids;
  std::vector<std::pair<int, int>> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    kept.push_back(edges[i]);
    kept_ids.push_back(static_cast<int>(i));
    if (max_bipartite_matching(kept) < static_cast<int>(kept.size())) {
      kept.pop_back();
      kept_ids.pop_back();
    }
    if (static_cast<int>(kept.size()) == target) break;
  }
  return kept_ids;
}

}  // namespace

FamilyPropertyReport verify_family_properties(const LayeredInstance& instance,
                                              double eps, double alpha,
                                              int trials, std::uint64_t seed) {
  instance.validate();
  if (!(alpha > 0.0) || alpha >= 1.0) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  FamilyPropertyReport report;
  Rng rng(seed);
  int p = instance.layer_count();
  int n = instance.copies;
  auto fail = [&](const std::string& what) {
    std::ostringstream oss;
    oss << "property failure: " << what;
    if (report.detail.empty()) report.detail = oss.str();
  };

  int agreement_trials = std::min(trials, 200);
  int spot_trials = std::min(trials, 500);

  // (a) Functions agreeing on the first i-1 secret indices are identical
  // on sets drawn from the first i layers.
  if (n >= 2) {
    for (int i = 1; i <= p && report.restricted_agreement; ++i) {
      for (int t = 0; t < agreement_trials; ++t) {
        LayeredInstance left = instance;
        LayeredInstance right = instance;
        for (int j = 0; j < p; ++j) {
          int o = rng.next_int(1, n);
          left.layers[j].secret_copy = o;
          right.layers[j].secret_copy = o;
        }
        for (int j = i - 1; j < p; ++j) {
          // Differ from layer i onward (1-based: indices o_i..o_p free).
          right.layers[j].secret_copy =
              1 + (right.layers[j].secret_copy % n);
        }
        LayeredFamilyFunction f_left(left);
        LayeredFamilyFunction f_right(right);
        ElementSet s;
        for (int layer = 0; layer < i; ++layer) {
          int edge_count =
              static_cast<int>(instance.layers[layer].edges.size());
          for (int edge = 0; edge < edge_count; ++edge) {
            for (int copy = 1; copy <= n; ++copy) {
              if (rng.next_unit() < 0.4) {
                s.push_back(instance.element_id(layer, edge, copy));
              }
            }
          }
        }
        if (f_left.value(s) != f_right.value(s)) {
          report.restricted_agreement = false;
          fail("restricted-ground agreement");
          break;
        }
      }
    }
  }

  // (c) Secret copies of one maximum matching per layer reach p/(1+eps).
  {
    ElementSet s;
    for (int layer = 0; layer < p; ++layer) {
      for (int edge : one_max_matching(instance.layers[layer].edges)) {
        s.push_back(instance.element_id(
            layer, edge, instance.layers[layer].secret_copy));
      }
    }
    LayeredFamilyFunction f(instance);
    double value = f.value(s);
    if (!approx_ge(value, static_cast<double>(p) / (1.0 + eps))) {
      report.yes_case = false;
      fail("yes-case value below p/(1+eps)");
    }
    bool bounds_are_exact = true;
    for (const auto& layer : instance.layers) {
      if (std::fabs(layer.matching_bound -
                    max_bipartite_matching(layer.edges)) > kCmpTol) {
        bounds_are_exact = false;
      }
    }
    if (bounds_are_exact && !approx_eq(value, static_cast<double>(p))) {
      report.yes_case = false;
      fail("yes-case value should telescope to exactly p");
    }
  }

  // (d) Sets that avoid every secret copy and take at most alpha * m_i
  // elements per layer stay strictly below 1 + alpha/(alpha+1) * p.
  {
    LayeredFamilyFunction f(instance);
    double bound = 1.0 + alpha / (alpha + 1.0) * static_cast<double>(p);
    for (int t = 0; t < trials && report.no_case; ++t) {
      ElementSet s;
      for (int layer = 0; layer < p; ++layer) {
        const auto& li = instance.layers[layer];
        int budget = static_cast<int>(std::floor(alpha * li.matching_bound));
        ElementSet pool;
        for (int edge = 0; edge < static_cast<int>(li.edges.size()); ++edge) {
          for (int copy = 1; copy <= n; ++copy) {
            if (copy == li.secret_copy) continue;
            pool.push_back(instance.element_id(layer, edge, copy));
          }
        }
        rng.shuffle(pool);
        for (int j = 0; j < budget && j < static_cast<int>(pool.size()); ++j) {
          s.push_back(pool[j]);
        }
      }
      if (!(f.value(s) < bound)) {
        report.no_case = false;
        fail("no-case value reached the bound");
      }
    }
  }

  // Monotonicity and submodularity spot checks via random chains.
  {
    LayeredFamilyFunction f(instance);
    int ground = instance.ground_size();
    for (int t = 0; t < spot_trials && report.monotone_submodular; ++t) {
      ElementSet small, large;
      for (ElementId e = 0; e < ground; ++e) {
        double roll = rng.next_unit();
        if (roll < 0.25) small.push_back(e);
        if (roll < 0.55) large.push_back(e);
      }
      ElementId u = static_cast<ElementId>(rng.next_below(ground));
      if (set_contains(large, u)) continue;
      double small_gain = marginal(f, u, small);
      double large_gain = marginal(f, u, large);
      if (small_gain < -kCmpTol || large_gain < -kCmpTol) {
        report.monotone_submodular = false;
        fail("monotonicity");
      }
      if (small_gain < large_gain - kCmpTol) {
        report.monotone_submodular = false;
        fail("submodularity");
      }
    }
  }

  return report;
}

}  // namespace submax

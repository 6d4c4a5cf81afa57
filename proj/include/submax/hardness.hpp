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
// Layered hard-instance family: p bipartite graphs, n parallel copies per
// edge, one secret copy index per layer. The value of a set folds from the
// deepest layer upward through capped per-layer coverage ratios, so the
// whole evaluation depends on the set only through two counters per layer.
// Used as an adversarial instance generator for the streaming algorithms.

#ifndef SUBMAX_HARDNESS_HPP_
#define SUBMAX_HARDNESS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "submax/objective.hpp"

namespace submax {

struct LayeredInstance {
  struct Layer {
    std::vector<std::pair<int, int>> edges;  // bipartite, (left, right)
    double matching_bound = 0.0;             // m_i >= max matching of G_i
    int secret_copy = 1;                     // o_i in [1, n]
  };

  int copies = 1;  // n
  std::vector<Layer> layers;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int ground_size() const;

  // Element ids pack (layer, edge, copy) in layer-major order.
  ElementId element_id(int layer, int edge, int copy) const;
  // Inverse of element_id: (layer, edge, copy).
  std::tuple<int, int, int> locate(ElementId e) const;

  void validate() const;
};

// Exact streaming-friendly evaluation of the layered family.
class LayeredFamilyFunction : public SubmodularOracle {
 public:
  explicit LayeredFamilyFunction(LayeredInstance instance);
  const LayeredInstance& instance() const { return instance_; }

 protected:
  double value_impl(const ElementSet& s) const override;

 private:
  LayeredInstance instance_;
  std::vector<int> layer_offset_;
};

// Size of a maximum matching via augmenting paths; edges are (left, right)
// pairs over implicit vertex sets.
int max_bipartite_matching(const std::vector<std::pair<int, int>>& edges);

// Smallest power of (1 + eps) that is >= the max matching size of `edges`.
double matching_bound_power(const std::vector<std::pair<int, int>>& edges,
                            double eps);

struct FamilyPropertyReport {
  bool restricted_agreement = true;   // property (a)
  bool yes_case = true;               // property (c)
  bool no_case = true;                // property (d)
  bool monotone_submodular = true;    // spot checks
  std::string detail;                 // first failure, if any

  bool all_pass() const {
    return restricted_agreement && yes_case && no_case && monotone_submodular;
  }
};

// Checks the proven family properties on `instance`, re-randomizing secret
// indices for the agreement tests. `eps` is the slack used when the
// matching bounds were rounded up; `alpha` parameterizes the no-case bound
// f(S) < 1 + alpha/(alpha+1) * p. `trials` drives the no-case sampling;
// agreement and monotonicity spot checks are capped at 200/500 draws.
FamilyPropertyReport verify_family_properties(const LayeredInstance& instance,
                                              double eps, double alpha,
                                              int trials, std::uint64_t seed);

}  // namespace submax

#endif  // SUBMAX_HARDNESS_HPP_

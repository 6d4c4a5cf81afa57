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

#include "submax/objective.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace submax {

SubmodularOracle::SubmodularOracle(int ground_size, bool monotone)
    : ground_size_(ground_size), monotone_(monotone) {
  if (ground_size < 0) throw std::invalid_argument("negative ground size");
}

double SubmodularOracle::value(const ElementSet& s) const {
  for (ElementId e : s) {
    if (e < 0 || e >= ground_size_) {
      throw std::invalid_argument("element id " + std::to_string(e) +
                                  " outside ground set of size " +
                                  std::to_string(ground_size_));
    }
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  return value_impl(s);
}

double marginal(const SubmodularOracle& f, ElementId u, const ElementSet& s) {
  if (set_contains(s, u)) return 0.0;
  return f.value(set_plus(s, u)) - f.value(s);
}

double ordered_marginal(const SubmodularOracle& f, ElementId u,
                        const ElementSet& t,
                        const std::map<ElementId, int>& order) {
  auto it_u = order.find(u);
  if (it_u == order.end()) {
    throw std::invalid_argument("ordered_marginal: missing order entry");
  }
  ElementSet before;
  for (ElementId v : t) {
    auto it = order.find(v);
    if (it == order.end()) {
      throw std::invalid_argument("ordered_marginal: missing order entry");
    }
    if (it->second < it_u->second) before.push_back(v);
  }
  return f.value(set_plus(before, u)) - f.value(before);
}

CoverageFunction::CoverageFunction(int universe_size,
                                   std::vector<std::vector<int>> covers,
                                   std::vector<double> point_weight)
    : SubmodularOracle(static_cast<int>(covers.size()), /*monotone=*/true),
      universe_size_(universe_size),
      covers_(std::move(covers)),
      covered_by_(universe_size),
      point_weight_(std::move(point_weight)) {
  if (static_cast<int>(point_weight_.size()) != universe_size) {
    throw std::invalid_argument("coverage: one weight per universe point");
  }
  for (double w : point_weight_) {
    if (w < 0.0) throw std::invalid_argument("coverage: negative weight");
  }
  for (std::size_t e = 0; e < covers_.size(); ++e) {
    std::sort(covers_[e].begin(), covers_[e].end());
    for (int v : covers_[e]) {
      if (v < 0 || v >= universe_size) {
        throw std::invalid_argument("coverage: point id out of range");
      }
      covered_by_[v].push_back(static_cast<int>(e));
    }
  }
}

CoverageFunction CoverageFunction::modular(std::vector<double> element_weight) {
  int n = static_cast<int>(element_weight.size());
  std::vector<std::vector<int>> covers(n);
  for (int e = 0; e < n; ++e) covers[e] = {e};
  return CoverageFunction(n, std::move(covers), std::move(element_weight));
}

double CoverageFunction::value_impl(const ElementSet& s) const {
  // Scratch bitmap over the universe keeps the union weight exact.
  std::vector<std::uint8_t> seen(universe_size_, 0);
  double total = 0.0;
  for (ElementId e : s) {
    for (int v : covers_[e]) {
      if (!seen[v]) {
        seen[v] = 1;
        total += point_weight_[v];
      }
    }
  }
  return total;
}

CutFunction::CutFunction(int vertex_count, std::vector<Edge> edges)
    : SubmodularOracle(vertex_count, /*monotone=*/false),
      edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.a < 0 || e.a >= vertex_count || e.b < 0 || e.b >= vertex_count) {
      throw std::invalid_argument("cut: endpoint out of range");
    }
    if (e.a == e.b) throw std::invalid_argument("cut: self-loop edge");
    if (e.weight < 0.0) throw std::invalid_argument("cut: negative weight");
  }
}

double CutFunction::value_impl(const ElementSet& s) const {
  std::vector<std::uint8_t> in(ground_size(), 0);
  for (ElementId e : s) in[e] = 1;
  double total = 0.0;
  for (const Edge& e : edges_) {
    if (in[e.a] != in[e.b]) total += e.weight;
  }
  return total;
}

}  // namespace submax

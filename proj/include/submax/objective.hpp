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
// Non-negative submodular value oracles with marginal helpers.

#ifndef SUBMAX_OBJECTIVE_HPP_
#define SUBMAX_OBJECTIVE_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <vector>

#include "submax/matroid.hpp"

namespace submax {

// Value oracle f: 2^N -> R>=0. Immutable after construction; the call
// counter is atomic and advisory (it reports query complexity).
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  int ground_size() const { return ground_size_; }
  bool is_monotone() const { return monotone_; }

  // f(S). Deterministic and >= 0. Throws std::invalid_argument on an
  // out-of-range id. Elements of s must be distinct.
  double value(const ElementSet& s) const;

  std::uint64_t value_calls() const { return calls_.load(); }
  void reset_value_calls() const { calls_.store(0); }

 protected:
  SubmodularOracle(int ground_size, bool monotone);
  virtual double value_impl(const ElementSet& s) const = 0;

 private:
  int ground_size_;
  bool monotone_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// f(u | S) = f(S + u) - f(S); exactly 0 when u is already in S.
double marginal(const SubmodularOracle& f, ElementId u, const ElementSet& s);

// f(u : T) = f(u | {v in T : order(v) < order(u)}). Every element of
// T + u must have an order entry.
double ordered_marginal(const SubmodularOracle& f, ElementId u,
                        const ElementSet& t,
                        const std::map<ElementId, int>& order);

// Weighted coverage: f(S) = total weight of the universe points covered by
// the elements of S. Monotone; every multilinear quantity has a closed form.
class CoverageFunction : public SubmodularOracle {
 public:
  CoverageFunction(int universe_size, std::vector<std::vector<int>> covers,
                   std::vector<double> point_weight);

  int universe_size() const { return universe_size_; }
  const std::vector<double>& point_weight() const { return point_weight_; }
  const std::vector<int>& covers(ElementId e) const { return covers_[e]; }
  const std::vector<int>& covered_by(int point) const {
    return covered_by_[point];
  }

  // Additive function as coverage over disjoint singleton points.
  static CoverageFunction modular(std::vector<double> element_weight);

 protected:
  double value_impl(const ElementSet& s) const override;

 private:
  int universe_size_;
  std::vector<std::vector<int>> covers_;      // element -> sorted point ids
  std::vector<std::vector<int>> covered_by_;  // point -> element ids
  std::vector<double> point_weight_;
};

// Undirected weighted cut with ground elements as vertices:
// f(S) = weight of edges crossing (S, N\S). Non-monotone, f(empty) = 0.
class CutFunction : public SubmodularOracle {
 public:
  struct Edge {
    int a;
    int b;
    double weight;
  };

  CutFunction(int vertex_count, std::vector<Edge> edges);
  const std::vector<Edge>& edges() const { return edges_; }

 protected:
  double value_impl(const ElementSet& s) const override;

 private:
  std::vector<Edge> edges_;
};

}  // namespace submax

#endif  // SUBMAX_OBJECTIVE_HPP_

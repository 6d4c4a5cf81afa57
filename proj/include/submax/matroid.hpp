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
// Matroid independence oracles plus the derived queries (rank, span,
// circuit, basis exchange) every algorithm in this library builds on.
// Sets are passed as vectors of distinct element ids.

#ifndef SUBMAX_MATROID_HPP_
#define SUBMAX_MATROID_HPP_

#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

namespace submax {

using ElementId = int;
using ElementSet = std::vector<ElementId>;

bool set_contains(const ElementSet& s, ElementId u);
ElementSet set_plus(const ElementSet& s, ElementId u);
ElementSet set_minus(const ElementSet& s, ElementId u);
ElementSet set_sorted(ElementSet s);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);

// Independence oracle over an explicit ground set {0, ..., ground_size-1}.
// Oracles are immutable after construction and safe to query concurrently;
// the call counter is advisory.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;

  int ground_size() const { return ground_size_; }
  int rank_total() const { return rank_total_; }

  // True iff s is independent. Throws std::invalid_argument on an
  // out-of-range id. Elements of s must be distinct.
  bool is_independent(const ElementSet& s) const;

  std::uint64_t independence_calls() const { return calls_.load(); }
  void reset_independence_calls() const { calls_.store(0); }

 protected:
  MatroidOracle(int ground_size, int rank_total);
  virtual bool independent_impl(const ElementSet& s) const = 0;

 private:
  int ground_size_;
  int rank_total_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// All subsets of size <= k are independent.
class UniformMatroid : public MatroidOracle {
 public:
  UniformMatroid(int ground_size, int k);
  int capacity() const { return k_; }

 protected:
  bool independent_impl(const ElementSet& s) const override;

 private:
  int k_;
};

// At most capacity[b] elements from each block b.
class PartitionMatroid : public MatroidOracle {
 public:
  PartitionMatroid(std::vector<int> block_of_element,
                   std::vector<int> block_capacity);
  const std::vector<int>& block_of_element() const { return block_of_; }
  const std::vector<int>& block_capacity() const { return capacity_; }

 protected:
  bool independent_impl(const ElementSet& s) const override;

 private:
  std::vector<int> block_of_;
  std::vector<int> capacity_;
};

// Elements are edges of an undirected multigraph; independent = forest.
class GraphicMatroid : public MatroidOracle {
 public:
  GraphicMatroid(int vertex_count,
                 std::vector<std::pair<int, int>> edge_endpoints);
  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 protected:
  bool independent_impl(const ElementSet& s) const override;

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
};

// rank_M(S), computed by greedy insertion.
int rank(const MatroidOracle& m, const ElementSet& s);

// True iff rank(S) == rank(S + u).
bool spans(const MatroidOracle& m, const ElementSet& s, ElementId u);

// The unique circuit in S + u, for S independent and S + u dependent
// (contract violations throw std::domain_error). Result is sorted and
// always contains u.
ElementSet circuit_of(const MatroidOracle& m, const ElementSet& s,
                      ElementId u);

// For bases B1, B2 and u in B1\B2, returns v in B2\B1 with both
// B1 - u + v and B2 - v + u independent.
ElementId basis_exchange(const MatroidOracle& m, const ElementSet& b1,
                         const ElementSet& b2, ElementId u);

// Splits J into (J1, J2) with (I\I1) + J1 and I1 + J2 both independent
// (Brylawski/Greene/Woodall block exchange). Exhaustive search; refuses
// |J| > 20.
std::pair<ElementSet, ElementSet> exchange_partition(const MatroidOracle& m,
                                                     const ElementSet& i_set,
                                                     const ElementSet& i1,
                                                     const ElementSet& j_set);

// Greedy extension of s to a base, scanning candidates in id order.
ElementSet extend_to_base(const MatroidOracle& m, const ElementSet& s);

}  // namespace submax

#endif  // SUBMAX_MATROID_HPP_

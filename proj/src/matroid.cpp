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

#include "submax/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "submax/check.hpp"

namespace submax {

bool set_contains(const ElementSet& s, ElementId u) {
  return std::find(s.begin(), s.end(), u) != s.end();
}

ElementSet set_plus(const ElementSet& s, ElementId u) {
  ElementSet out = s;
  if (!set_contains(s, u)) out.push_back(u);
  return out;
}

ElementSet set_minus(const ElementSet& s, ElementId u) {
  ElementSet out;
  out.reserve(s.size());
  for (ElementId e : s) {
    if (e != u) out.push_back(e);
  }
  return out;
}

ElementSet set_sorted(ElementSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out = a;
  for (ElementId e : b) {
    if (!set_contains(a, e)) out.push_back(e);
  }
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size());
  for (ElementId e : a) {
    if (!set_contains(b, e)) out.push_back(e);
  }
  return out;
}

MatroidOracle::MatroidOracle(int ground_size, int rank_total)
    : ground_size_(ground_size), rank_total_(rank_total) {
  if (ground_size < 0) throw std::invalid_argument("negative ground size");
}

bool MatroidOracle::is_independent(const ElementSet& s) const {
  for (ElementId e : s) {
    if (e < 0 || e >= ground_size_) {
      throw std::invalid_argument("element id " + std::to_string(e) +
                                  " outside ground set of size " +
                                  std::to_string(ground_size_));
    }
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  return independent_impl(s);
}

UniformMatroid::UniformMatroid(int ground_size, int k)
    : MatroidOracle(ground_size, std::min(ground_size, k)), k_(k) {
  if (k < 1) throw std::invalid_argument("uniform matroid needs k >= 1");
}

bool UniformMatroid::independent_impl(const ElementSet& s) const {
  return static_cast<int>(s.size()) <= k_;
}

namespace {

int partition_rank(const std::vector<int>& block_of,
                   const std::vector<int>& capacity) {
  std::vector<int> size(capacity.size(), 0);
  for (int b : block_of) ++size[b];
  int r = 0;
  for (std::size_t b = 0; b < capacity.size(); ++b) {
    r += std::min(size[b], capacity[b]);
  }
  return r;
}

}  // namespace

PartitionMatroid::PartitionMatroid(std::vector<int> block_of_element,
                                   std::vector<int> block_capacity)
    : MatroidOracle(static_cast<int>(block_of_element.size()),
                    [&] {
                      for (int b : block_of_element) {
                        if (b < 0 ||
                            b >= static_cast<int>(block_capacity.size())) {
                          throw std::invalid_argument("bad block id");
                        }
                      }
                      for (int c : block_capacity) {
                        if (c < 1) {
                          throw std::invalid_argument(
                              "block capacities must be >= 1");
                        }
                      }
                      return partition_rank(block_of_element, block_capacity);
                    }()),
      block_of_(std::move(block_of_element)),
      capacity_(std::move(block_capacity)) {}

bool PartitionMatroid::independent_impl(const ElementSet& s) const {
  std::vector<int> count(capacity_.size(), 0);
  for (ElementId e : s) {
    int b = block_of_[e];
    if (++count[b] > capacity_[b]) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false if x and y were already connected.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent[rx] = ry;
    return true;
  }
  std::vector<int> parent;
};

int graphic_rank(int vertex_count,
                 const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(vertex_count);
  int r = 0;
  for (const auto& [a, b] : edges) {
    if (uf.unite(a, b)) ++r;
  }
  return r;
}

}  // namespace

GraphicMatroid::GraphicMatroid(int vertex_count,
                               std::vector<std::pair<int, int>> edge_endpoints)
    : MatroidOracle(static_cast<int>(edge_endpoints.size()),
                    [&] {
                      for (const auto& [a, b] : edge_endpoints) {
                        if (a < 0 || a >= vertex_count || b < 0 ||
                            b >= vertex_count) {
                          throw std::invalid_argument("edge endpoint out of "
                                                      "range");
                        }
                        if (a == b) {
                          throw std::invalid_argument(
                              "self-loop edges are not allowed");
                        }
                      }
                      return graphic_rank(vertex_count, edge_endpoints);
                    }()),
      vertex_count_(vertex_count),
      edges_(std::move(edge_endpoints)) {}

bool GraphicMatroid::independent_impl(const ElementSet& s) const {
  UnionFind uf(vertex_count_);
  for (ElementId e : s) {
    if (!uf.unite(edges_[e].first, edges_[e].second)) return false;
  }
  return true;
}

int rank(const MatroidOracle& m, const ElementSet& s) {
  ElementSet kept;
  kept.reserve(s.size());
  for (ElementId e : s) {
    kept.push_back(e);
    if (!m.is_independent(kept)) kept.pop_back();
  }
  return static_cast<int>(kept.size());
}

bool spans(const MatroidOracle& m, const ElementSet& s, ElementId u) {
  if (set_contains(s, u)) return true;
  return rank(m, s) == rank(m, set_plus(s, u));
}

ElementSet circuit_of(const MatroidOracle& m, const ElementSet& s,
                      ElementId u) {
  if (!m.is_independent(s)) {
    throw std::domain_error("circuit_of: S must be independent");
  }
  ElementSet extended = set_plus(s, u);
  if (m.is_independent(extended)) {
    throw std::domain_error("circuit_of: S + u must be dependent");
  }
  // w belongs to the unique circuit iff removing w restores independence.
  ElementSet circuit;
  for (ElementId w : extended) {
    if (m.is_independent(set_minus(extended, w))) circuit.push_back(w);
  }
  SUBMAX_CHECK(set_contains(circuit, u), "circuit must contain u");
  SUBMAX_CHECK(!m.is_independent(circuit), "circuit must be dependent");
  return set_sorted(circuit);
}

ElementId basis_exchange(const MatroidOracle& m, const ElementSet& b1,
                         const ElementSet& b2, ElementId u) {
  if (b1.size() != b2.size()) {
    throw std::domain_error("basis_exchange: bases must have equal size");
  }
  if (!set_contains(b1, u) || set_contains(b2, u)) {
    throw std::domain_error("basis_exchange: u must lie in B1 \\ B2");
  }
  ElementSet b1_minus_u = set_minus(b1, u);
  for (ElementId v : set_sorted(set_difference(b2, b1))) {
    if (m.is_independent(set_plus(b1_minus_u, v)) &&
        m.is_independent(set_plus(set_minus(b2, v), u))) {
      return v;
    }
  }
  throw std::logic_error(
      "basis_exchange: no exchange partner found; oracle is not a matroid");
}

std::pair<ElementSet, ElementSet> exchange_partition(const MatroidOracle& m,
                                                     const ElementSet& i_set,
                                                     const ElementSet& i1,
                                                     const ElementSet& j_set) {
  if (!m.is_independent(i_set) || !m.is_independent(j_set)) {
    throw std::domain_error("exchange_partition: I and J must be independent");
  }
  for (ElementId e : i1) {
    if (!set_contains(i_set, e)) {
      throw std::domain_error("exchange_partition: I1 must be a subset of I");
    }
  }
  if (j_set.size() > 20) {
    throw std::runtime_error(
        "exchange_partition: |J| > 20 exceeds the exhaustive-search cap");
  }
  ElementSet i2 = set_difference(i_set, i1);
  ElementSet j = set_sorted(j_set);
  std::uint64_t limit = 1ULL << j.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    ElementSet j1, j2;
    for (std::size_t t = 0; t < j.size(); ++t) {
      ((mask >> t) & 1 ? j1 : j2).push_back(j[t]);
    }
    if (m.is_independent(set_union(i2, j1)) &&
        m.is_independent(set_union(i1, j2))) {
      return {j1, j2};
    }
  }
  throw std::logic_error(
      "exchange_partition: search exhausted; oracle is not a matroid");
}

ElementSet extend_to_base(const MatroidOracle& m, const ElementSet& s) {
  ElementSet base = s;
  for (ElementId e = 0; e < m.ground_size(); ++e) {
    if (set_contains(base, e)) continue;
    base.push_back(e);
    if (!m.is_independent(base)) base.pop_back();
  }
  return base;
}

}  // namespace submax

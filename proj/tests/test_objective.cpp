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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "submax/objective.hpp"
#include "submax/rng.hpp"

using namespace submax;

namespace {

// U_a = {1,2}, U_b = {2,3}, unit weights over universe {0..3}.
CoverageFunction two_set_coverage() {
  return CoverageFunction(4, {{1, 2}, {2, 3}}, {1.0, 1.0, 1.0, 1.0});
}

void check_submodular_monotone(const SubmodularOracle& f, bool expect_monotone) {
  int n = f.ground_size();
  REQUIRE(n <= 8);
  std::vector<double> value(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ElementSet s;
    for (int e = 0; e < n; ++e) {
      if (mask & (1u << e)) s.push_back(e);
    }
    value[mask] = f.value(s);
    CHECK(value[mask] >= 0.0);
  }
  for (unsigned s = 0; s < (1u << n); ++s) {
    for (unsigned t = s; t < (1u << n); ++t) {
      CHECK(value[s] + value[t] >= value[s | t] + value[s & t] - 1e-12);
    }
    if (expect_monotone) {
      for (int e = 0; e < n; ++e) {
        if (!(s & (1u << e))) {
          CHECK(value[s | (1u << e)] >= value[s] - 1e-12);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("coverage value") {
  CoverageFunction f = two_set_coverage();
  CHECK(f.value({0, 1}) == 3.0);
  CHECK(f.value({}) == 0.0);
  CHECK(f.value({0}) == 2.0);
  CHECK(f.is_monotone());
  CHECK_THROWS_AS(f.value({2}), std::invalid_argument);
}

TEST_CASE("cut value") {
  CutFunction f(2, {{0, 1, 5.0}});
  CHECK(f.value({0}) == 5.0);
  CHECK(f.value({}) == 0.0);
  CHECK(f.value({0, 1}) == 0.0);
  CHECK_FALSE(f.is_monotone());
  CHECK_THROWS_AS(CutFunction(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CutFunction(2, {{0, 1, -1.0}}), std::invalid_argument);
}

TEST_CASE("marginal") {
  CoverageFunction f = two_set_coverage();
  CHECK(marginal(f, 1, {0}) == 1.0);
  CHECK(marginal(f, 0, {0}) == 0.0);  // u already in S
  CutFunction cut(2, {{0, 1, 5.0}});
  CHECK(marginal(cut, 1, {0}) == -5.0);
}

TEST_CASE("marginal equals the defining value difference bit-for-bit") {
  Rng rng(5);
  CoverageFunction f(6, {{0, 1}, {1, 2}, {3}, {2, 4}, {0, 5}},
                     {0.3, 1.7, 0.9, 0.2, 1.1, 0.5});
  for (int t = 0; t < 50; ++t) {
    ElementSet s;
    for (int e = 0; e < 5; ++e) {
      if (rng.next_unit() < 0.5) s.push_back(e);
    }
    ElementId u = static_cast<ElementId>(rng.next_below(5));
    if (set_contains(s, u)) continue;
    CHECK(marginal(f, u, s) == f.value(set_plus(s, u)) - f.value(s));
  }
}

TEST_CASE("ordered marginal") {
  CoverageFunction f = two_set_coverage();
  std::map<ElementId, int> order{{0, 1}, {1, 2}};
  // f(b : {a, b}) with a before b.
  CHECK(ordered_marginal(f, 1, {0, 1}, order) == 1.0);
  // Earliest element sees the empty prefix.
  CHECK(ordered_marginal(f, 0, {0, 1}, order) == f.value({0}));
  CHECK(ordered_marginal(f, 1, {}, order) == f.value({1}));
  std::map<ElementId, int> incomplete{{1, 2}};
  CHECK_THROWS_AS(ordered_marginal(f, 1, {0, 1}, incomplete),
                  std::invalid_argument);
}

TEST_CASE("value is pure") {
  CoverageFunction f = two_set_coverage();
  double a = f.value({0, 1});
  double b = f.value({0, 1});
  CHECK(a == b);
}

TEST_CASE("oracle call counter") {
  CoverageFunction f = two_set_coverage();
  f.reset_value_calls();
  f.value({});
  f.value({0});
  CHECK(f.value_calls() == 2);
  f.reset_value_calls();
  CHECK(f.value_calls() == 0);
}

TEST_CASE("random coverage functions are monotone submodular") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    int n = rng.next_int(3, 6);
    int universe = rng.next_int(3, 8);
    std::vector<std::vector<int>> covers(n);
    for (auto& c : covers) {
      for (int v = 0; v < universe; ++v) {
        if (rng.next_unit() < 0.4) c.push_back(v);
      }
    }
    std::vector<double> weights(universe);
    for (double& w : weights) w = rng.next_unit();
    check_submodular_monotone(CoverageFunction(universe, covers, weights),
                              /*expect_monotone=*/true);
  }
}

TEST_CASE("random cut functions are submodular and non-negative") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    int n = rng.next_int(3, 6);
    std::vector<CutFunction::Edge> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng.next_unit() < 0.6) edges.push_back({a, b, rng.next_unit()});
      }
    }
    check_submodular_monotone(CutFunction(n, edges),
                              /*expect_monotone=*/false);
  }
}

TEST_CASE("modular coverage helper") {
  CoverageFunction f = CoverageFunction::modular({3.0, 1.0, 2.0});
  CHECK(f.value({0, 2}) == 5.0);
  CHECK(f.value({1}) == 1.0);
}

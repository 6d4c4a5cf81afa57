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

#include <cmath>
#include <map>
#include <stdexcept>

#include "submax/matroid.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/rng.hpp"
#include "submax/rounding.hpp"

using namespace submax;

TEST_CASE("single full-weight set comes back unchanged") {
  UniformMatroid m(4, 2);
  ConvexCombination comb{{{1, 3}, 1.0}};
  for (std::uint64_t seed : {0ull, 5ull, 77ull}) {
    CHECK(swap_round(m, comb, seed) == ElementSet{1, 3});
  }
}

TEST_CASE("two singletons at half weight round to a fair coin") {
  UniformMatroid m(2, 1);
  ConvexCombination comb{{{0}, 0.5}, {{1}, 0.5}};
  int picked_first = 0;
  constexpr int kTrials = 10000;
  for (int t = 0; t < kTrials; ++t) {
    ElementSet r = swap_round(m, comb, mix64(3, t));
    REQUIRE(r.size() == 1);
    if (r[0] == 0) ++picked_first;
  }
  // 3 sigma around 5000 for a fair coin.
  double sigma = std::sqrt(0.25 * kTrials);
  CHECK(std::fabs(picked_first - kTrials / 2.0) <= 3.0 * sigma);
}

TEST_CASE("input validation") {
  UniformMatroid m(4, 1);
  CHECK_THROWS_AS(swap_round(m, {{{0, 1}, 0.5}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(swap_round(m, {{{0}, 0.7}, {{1}, 0.7}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(swap_round(m, {{{0}, 0.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(round_best_of(m, {{{0}, 1.0}},
                                CoverageFunction::modular({1, 1, 1, 1}), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("output always independent, weight deficit goes to the empty set") {
  GraphicMatroid m(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  ConvexCombination comb{{{0, 1}, 0.3}, {{2, 3}, 0.25}};
  for (int t = 0; t < 200; ++t) {
    ElementSet r = swap_round(m, comb, mix64(11, t));
    CHECK(m.is_independent(r));
    for (ElementId e : r) CHECK(e < m.ground_size());
  }
}

TEST_CASE("marginals preserved and rounding lossless in expectation") {
  Rng rng(13);
  // Random coverage objective over a partition matroid.
  PartitionMatroid m({0, 0, 1, 1, 2, 2}, {1, 1, 2});
  CoverageFunction f(8,
                     {{0, 1}, {1, 2}, {3}, {2, 4, 5}, {5, 6}, {7, 0}},
                     {0.9, 0.4, 1.3, 0.7, 1.1, 0.5, 0.8, 1.2});
  ConvexCombination comb{
      {{0, 2, 4}, 0.35}, {{1, 3}, 0.25}, {{0, 3, 5}, 0.3}};
  FractionalPoint x = combination_point(comb);
  double exact = exact_F_coverage(f, x);

  constexpr int kTrials = 20000;
  double sum = 0.0, sum_sq = 0.0;
  std::map<ElementId, int> hits;
  for (int t = 0; t < kTrials; ++t) {
    ElementSet r = swap_round(m, comb, mix64(17, t));
    REQUIRE(m.is_independent(r));
    double v = f.value(r);
    sum += v;
    sum_sq += v * v;
    for (ElementId e : r) ++hits[e];
  }
  double mean = sum / kTrials;
  double stderr_mean =
      std::sqrt(std::max(0.0, (sum_sq - kTrials * mean * mean) /
                                  (kTrials - 1.0)) /
                kTrials);
  CHECK(mean >= exact - 3.0 * stderr_mean);

  for (const auto& [e, xe] : x.coords()) {
    double p_hat = static_cast<double>(hits[e]) / kTrials;
    double sigma = std::sqrt(xe * (1.0 - xe) / kTrials);
    CHECK(std::fabs(p_hat - xe) <= 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("round_best_of") {
  UniformMatroid m(4, 2);
  CoverageFunction f = CoverageFunction::modular({5.0, 1.0, 2.0, 0.5});

  SUBCASE("single set with one trial") {
    CHECK(round_best_of(m, {{{2, 3}, 1.0}}, f, 1, 9) == ElementSet{2, 3});
  }

  SUBCASE("never below the best listed set") {
    ConvexCombination comb{{{1}, 0.4}, {{0, 2}, 0.4}, {{3}, 0.2}};
    for (int t = 0; t < 50; ++t) {
      ElementSet r = round_best_of(m, comb, f, 4, mix64(21, t));
      CHECK(f.value(r) >= f.value({0, 2}));
    }
  }

  SUBCASE("beats the fractional value on most small instances") {
    Rng rng(23);
    int good = 0;
    constexpr int kInstances = 40;
    for (int i = 0; i < kInstances; ++i) {
      UniformMatroid um(5, 2);
      std::vector<double> weights(5);
      for (double& w : weights) w = rng.next_unit();
      CoverageFunction fm = CoverageFunction::modular(weights);
      ConvexCombination comb{{{0, 1}, 0.3}, {{2, 3}, 0.4}, {{1, 4}, 0.3}};
      FractionalPoint x = combination_point(comb);
      ElementSet r = round_best_of(um, comb, fm, 32, mix64(31, i));
      if (fm.value(r) >= exact_F_coverage(fm, x) - 1e-12) ++good;
    }
    CHECK(good >= kInstances * 9 / 10);
  }
}

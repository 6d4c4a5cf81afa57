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
#include <memory>
#include <optional>
#include <stdexcept>

#include "submax/multilinear.hpp"
#include "submax/rng.hpp"
#include "submax/single_pass.hpp"

using namespace submax;

namespace {

// ---------------------------------------------------------------------
// Straight-line reference re-implementation of the streaming pseudocode
// for a uniform matroid and a coverage objective, kept independent of the
// library's data structures and power/derivative evaluation paths.
// ---------------------------------------------------------------------

struct ReferenceTrace {
  std::map<long long, ElementSet> buckets;            // A_i
  std::map<long long, std::map<int, double>> shares;  // a_i
  std::optional<long long> prune;                     // b
  std::vector<ElementSet> candidates;                 // S_k
  std::map<int, double> point;                        // s
};

double ref_pow(double c, long long i) {
  double r = 1.0;
  for (long long k = 0; k < std::llabs(i); ++k) r *= c;
  return i >= 0 ? r : 1.0 / r;
}

ReferenceTrace reference_single_pass(const CoverageFunction& f,
                                     const MatroidOracle& matroid,
                                     double alpha, double eps,
                                     const std::vector<ElementId>& order,
                                     bool capped = false) {
  int rank_k = matroid.rank_total();
  int m = static_cast<int>(std::ceil(3.0 * alpha / eps));
  double c = m / (m - alpha);
  double cap = 1.0 / (m * (c - 1.0) + 1.0);
  long long big_l = static_cast<long long>(
      std::ceil(std::log(2.0 * c / (eps * (c - 1.0))) / std::log(c)));

  ReferenceTrace t;
  std::map<int, double> a;

  auto derivative = [&](int u) {
    // sum over points covered by u of w_v * prod_{e != u} (1 - a_e).
    double total = 0.0;
    for (int v : f.covers(u)) {
      double survive = 1.0;
      for (int e = 0; e < f.ground_size(); ++e) {
        if (e == u || !a.count(e)) continue;
        bool touches = false;
        for (int w : f.covers(e)) touches |= (w == v);
        if (touches) survive *= 1.0 - a[e];
      }
      total += f.point_weight()[v] * survive;
    }
    return total;
  };

  for (ElementId u : order) {
    double d = derivative(u);
    if (!(d > 0.0)) continue;
    long long top = 0;
    while (ref_pow(c, top + 1) <= d) ++top;
    while (ref_pow(c, top) > d) --top;
    long long low = top - rank_k - big_l;
    if (t.prune && *t.prune > low) low = *t.prune;
    double added = 0.0;
    for (long long i = low; i <= top; ++i) {
      if (capped && added > cap) break;
      if (matroid.is_independent(set_plus(t.buckets[i], u))) {
        t.buckets[i].push_back(u);
        double share = ref_pow(c, i) / (m * d);
        t.shares[i][u] += share;
        added += share;
      }
    }
    // b <- h - L for the largest h with a suffix of >= rank elements.
    long long suffix = 0;
    std::optional<long long> h;
    for (auto it = t.buckets.rbegin(); it != t.buckets.rend(); ++it) {
      suffix += static_cast<long long>(it->second.size());
      if (suffix >= rank_k) {
        h = it->first;
        break;
      }
    }
    if (h) t.prune = *h - big_l;
    if (t.prune) {
      for (auto it = t.buckets.begin(); it != t.buckets.end();) {
        if (it->first < *t.prune) {
          t.shares.erase(it->first);
          it = t.buckets.erase(it);
        } else {
          ++it;
        }
      }
    }
    a.clear();
    for (const auto& [i, sh] : t.shares) {
      for (const auto& [e, v] : sh) a[e] += v;
    }
  }

  t.candidates.assign(m, {});
  for (auto it = t.buckets.rbegin(); it != t.buckets.rend(); ++it) {
    long long k = ((it->first % m) + m) % m;
    ElementSet& target = t.candidates[k];
    for (ElementId u : it->second) {
      if (!set_contains(target, u) &&
          matroid.is_independent(set_plus(target, u))) {
        target.push_back(u);
      }
    }
  }
  for (const ElementSet& s : t.candidates) {
    for (ElementId e : s) t.point[e] += 1.0 / m;
  }
  return t;
}

// The golden-trace fixture: 4 elements, uniform rank 2, 5-point coverage.
CoverageFunction golden_objective() {
  return CoverageFunction(5, {{0, 1}, {1, 2}, {3}, {0, 4}},
                          {1.0, 0.8, 0.6, 1.2, 0.5});
}

}  // namespace

TEST_CASE("derived constants match the stated formulas") {
  auto cfg = SinglePassConfig::make(0.1, ObjectiveMode::kMonotone);
  CHECK(cfg.alpha == 1.1462);
  CHECK(cfg.candidate_count == 35);
  CHECK(cfg.bucket_ratio == doctest::Approx(1.0338574).epsilon(1e-6));

  auto tight = SinglePassConfig::make(1.0, ObjectiveMode::kMonotone);
  CHECK(tight.candidate_count == 4);

  auto nonmono = SinglePassConfig::make(1.0, ObjectiveMode::kNonMonotone);
  CHECK(nonmono.alpha == 1.9532);
  CHECK(nonmono.candidate_count == 6);
  CHECK(nonmono.per_element_cap ==
        doctest::Approx(1.0 / (6.0 * (6.0 / (6.0 - 1.9532) - 1.0) + 1.0))
            .epsilon(1e-12));

  CHECK_THROWS_AS(SinglePassConfig::make(0.0, ObjectiveMode::kMonotone),
                  std::invalid_argument);
  CHECK_THROWS_AS(SinglePassConfig::make(1.5, ObjectiveMode::kMonotone),
                  std::invalid_argument);
}

TEST_CASE("first element fills its whole window") {
  CoverageFunction f = CoverageFunction::modular({1.0, 0.3});
  UniformMatroid m(2, 1);
  auto cfg = SinglePassConfig::make(1.0, ObjectiveMode::kMonotone);
  SinglePassRun run(cfg, m, f, MultilinearEvaluator::exact(f));
  run.process(0);
  // derivative 1.0 at the zero vector: top bucket index 0, the window
  // reaches down rank + L levels, and the prune step then deletes
  // everything below b = 0 - L.
  REQUIRE(run.prune_index().has_value());
  CHECK(*run.prune_index() == -cfg.window_levels);
  long long low = -cfg.window_levels;
  CHECK(run.buckets().size() ==
        static_cast<std::size_t>(cfg.window_levels + 1));
  for (long long i = low; i <= 0; ++i) {
    REQUIRE(run.buckets().count(i) == 1);
    CHECK(run.buckets().at(i).elements == ElementSet{0});
    double expected = std::pow(cfg.bucket_ratio, static_cast<double>(i)) /
                      cfg.candidate_count;
    CHECK(run.buckets().at(i).shares.at(0) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK_THROWS_AS(run.process(0), std::invalid_argument);
}

TEST_CASE("zero-derivative elements leave the state unchanged") {
  CoverageFunction f(2, {{0}, {0}}, {1.0, 1.0});  // duplicate coverage
  UniformMatroid m(2, 2);
  auto cfg = SinglePassConfig::make(1.0, ObjectiveMode::kMonotone);
  SinglePassRun run(cfg, m, f, MultilinearEvaluator::exact(f));
  run.process(0);
  auto buckets_before = run.buckets().size();
  // Element 1 covers the same single point; x_0 = ... < 1 so derivative is
  // positive. Use an element with literally zero weight instead.
  CoverageFunction g(1, {{0}, {}}, {1.0});
  SinglePassRun run2(SinglePassConfig::make(1.0, ObjectiveMode::kMonotone), m,
                     g, MultilinearEvaluator::exact(g));
  run2.process(1);  // covers nothing
  CHECK(run2.buckets().empty());
  CHECK(run2.reference_vector().is_zero());
  run2.process(0);
  CHECK_FALSE(run2.buckets().empty());
  (void)buckets_before;
}

TEST_CASE("golden trace: bucket state and candidates match the reference") {
  CoverageFunction f = golden_objective();
  UniformMatroid m(4, 2);
  auto cfg = SinglePassConfig::make(1.0, ObjectiveMode::kMonotone);
  std::vector<ElementId> order{2, 0, 3, 1};

  ReferenceTrace ref =
      reference_single_pass(f, m, cfg.alpha, cfg.epsilon, order);

  SinglePassRun run(cfg, m, f, MultilinearEvaluator::exact(f));
  for (ElementId u : order) run.process(u);

  REQUIRE(run.buckets().size() == ref.buckets.size());
  for (const auto& [i, bucket] : run.buckets()) {
    REQUIRE(ref.buckets.count(i) == 1);
    CHECK(bucket.elements == ref.buckets.at(i));
    REQUIRE(bucket.shares.size() == ref.shares.at(i).size());
    for (const auto& [e, v] : bucket.shares) {
      CHECK(v == doctest::Approx(ref.shares.at(i).at(e)).epsilon(1e-9));
    }
  }
  REQUIRE(run.prune_index().has_value());
  REQUIRE(ref.prune.has_value());
  CHECK(*run.prune_index() == *ref.prune);

  // Frozen trace values, computed by the reference implementation above on
  // this fixture and pinned.
  CHECK(*run.prune_index() == -6);
  CHECK(run.buckets().size() == 8);  // live levels -6 .. 1
  REQUIRE(run.buckets().count(0) == 1);
  CHECK(run.buckets().at(0).elements == ElementSet{2, 0});
  CHECK(run.buckets().at(0).shares.at(0) ==
        doctest::Approx(1.0 / 7.2).epsilon(1e-12));  // c^0 / (m * 1.8)
  REQUIRE(run.buckets().count(1) == 1);
  CHECK(run.buckets().at(1).elements == ElementSet{0});
  CHECK(run.max_stored() == 17);

  SinglePassOutput out = run.finalize(8, 99);
  CHECK(out.candidates[0] == ElementSet{2, 0});
  CHECK(out.candidates[1] == ElementSet{0, 2});
  CHECK(exact_F_coverage(f, out.point) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(out.value == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(out.candidates.size() == ref.candidates.size());
  for (std::size_t k = 0; k < out.candidates.size(); ++k) {
    CHECK(out.candidates[k] == ref.candidates[k]);
  }
  for (const auto& [e, v] : out.point.coords()) {
    CHECK(v == doctest::Approx(ref.point.at(e)).epsilon(1e-12));
  }
  CHECK(m.is_independent(out.solution));
  CHECK(out.value >= exact_F_coverage(f, out.point) - 1e-9);
}

TEST_CASE("random instances agree with the reference trace") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.next_int(5, 10);
    int universe = rng.next_int(6, 14);
    std::vector<std::vector<int>> covers(n);
    for (auto& c : covers) {
      for (int v = 0; v < universe; ++v) {
        if (rng.next_unit() < 0.3) c.push_back(v);
      }
    }
    std::vector<double> weights(universe);
    for (double& w : weights) w = 0.2 + rng.next_unit();
    CoverageFunction f(universe, covers, weights);

    std::unique_ptr<MatroidOracle> matroid;
    if (trial % 2 == 0) {
      matroid = std::make_unique<UniformMatroid>(n, rng.next_int(1, 3));
    } else {
      std::vector<int> blocks(n);
      for (int& b : blocks) b = rng.next_int(0, 2);
      matroid = std::make_unique<PartitionMatroid>(
          blocks, std::vector<int>{1, 2, 1});
    }

    double eps = trial % 3 == 0 ? 1.0 : 0.45;
    bool capped = trial % 4 == 3;  // the non-monotone variant's extra rule
    auto cfg = SinglePassConfig::make(
        eps, capped ? ObjectiveMode::kNonMonotone : ObjectiveMode::kMonotone);
    std::vector<ElementId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);

    ReferenceTrace ref =
        reference_single_pass(f, *matroid, cfg.alpha, eps, order, capped);
    SinglePassRun run(cfg, *matroid, f, MultilinearEvaluator::exact(f));
    for (ElementId u : order) run.process(u);

    REQUIRE(run.buckets().size() == ref.buckets.size());
    for (const auto& [i, bucket] : run.buckets()) {
      REQUIRE(ref.buckets.count(i) == 1);
      CHECK(bucket.elements == ref.buckets.at(i));
      for (const auto& [e, v] : bucket.shares) {
        CHECK(v == doctest::Approx(ref.shares.at(i).at(e)).epsilon(1e-9));
      }
    }
    CHECK(run.prune_index() == ref.prune);

    SinglePassOutput out = run.finalize(4, mix64(47, trial));
    for (std::size_t k = 0; k < out.candidates.size(); ++k) {
      CHECK(out.candidates[k] == ref.candidates[k]);
    }
  }
}

TEST_CASE("empty stream and all-zero objective return the empty set") {
  CoverageFunction zero(3, {{0}, {1}, {2}}, {0.0, 0.0, 0.0});
  UniformMatroid m(3, 2);
  auto cfg = SinglePassConfig::make(0.5, ObjectiveMode::kMonotone);

  SinglePassRun empty_run(cfg, m, zero, MultilinearEvaluator::exact(zero));
  SinglePassOutput empty_out = empty_run.finalize(4, 1);
  CHECK(empty_out.solution.empty());
  CHECK(empty_out.point.is_zero());

  SinglePassOutput zero_out =
      run_single_pass(cfg, m, zero, MultilinearEvaluator::exact(zero),
                      {0, 1, 2}, 4, 1);
  CHECK(zero_out.solution.empty());
  CHECK(zero_out.value == 0.0);
}

TEST_CASE("reference vector stays in the box and memory stays bounded") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.next_int(6, 12);
    int universe = rng.next_int(8, 16);
    std::vector<std::vector<int>> covers(n);
    for (auto& c : covers) {
      while (c.empty()) {
        for (int v = 0; v < universe; ++v) {
          if (rng.next_unit() < 0.3) c.push_back(v);
        }
      }
    }
    std::vector<double> weights(universe);
    for (double& w : weights) w = 0.2 + rng.next_unit();
    CoverageFunction f(universe, covers, weights);
    UniformMatroid m(n, rng.next_int(1, 4));

    auto cfg = SinglePassConfig::make(0.3, ObjectiveMode::kMonotone);
    SinglePassRun run(cfg, m, f, MultilinearEvaluator::exact(f));
    std::vector<ElementId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (ElementId u : order) {
      run.process(u);
      for (const auto& [e, v] : run.reference_vector().coords()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(run.stored_elements() <= run.memory_bound());
    }
    CHECK(run.max_stored() <= run.memory_bound());

    // Nested spanning structure on the live buckets at finalize time.
    if (run.prune_index()) {
      long long b = *run.prune_index();
      for (const auto& [i, bucket] : run.buckets()) {
        if (i <= b || bucket.elements.empty()) continue;
        REQUIRE(run.buckets().count(i - 1) == 1);
        const ElementSet& below = run.buckets().at(i - 1).elements;
        for (ElementId u : bucket.elements) {
          CHECK(spans(m, below, u));
        }
      }
    }
  }
}

TEST_CASE("non-monotone mode caps per-element mass") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    int n = rng.next_int(5, 9);
    std::vector<CutFunction::Edge> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng.next_unit() < 0.5) edges.push_back({a, b, 0.2 + rng.next_unit()});
      }
    }
    if (edges.empty()) edges.push_back({0, 1, 1.0});
    CutFunction f(n, edges);
    UniformMatroid m(n, 3);

    auto cfg = SinglePassConfig::make(0.5, ObjectiveMode::kNonMonotone);
    SinglePassRun run(
        cfg, m, f,
        MultilinearEvaluator::sampled(f, EstimatorConfig{2000, mix64(41, trial)}));
    std::vector<ElementId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (ElementId u : order) run.process(u);

    // a_all(u) <= p + 1/m coordinate-wise.
    double cap = cfg.per_element_cap + 1.0 / cfg.candidate_count + 1e-12;
    std::map<ElementId, double> total;
    for (const auto& [i, bucket] : run.buckets()) {
      for (const auto& [e, v] : bucket.shares) total[e] += v;
    }
    for (const auto& [e, v] : total) CHECK(v <= cap);

    SinglePassOutput out = run.finalize(16, mix64(43, trial));
    CHECK(m.is_independent(out.solution));
  }
}

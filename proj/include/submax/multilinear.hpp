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
// The multilinear extension F(x) = E[f(R(x))], evaluated exactly for
// coverage functions and by seeded Monte-Carlo sampling for arbitrary
// oracles. Derivative estimates use common random numbers so that
// differences stay low-variance.

#ifndef SUBMAX_MULTILINEAR_HPP_
#define SUBMAX_MULTILINEAR_HPP_

#include <cstdint>
#include <map>

#include "submax/objective.hpp"

namespace submax {

// A point of [0,1]^N with sparse support; absent coordinates are 0.
class FractionalPoint {
 public:
  FractionalPoint() = default;

  double get(ElementId e) const {
    auto it = coords_.find(e);
    return it == coords_.end() ? 0.0 : it->second;
  }

  // Stores v, clamping values within kCmpTol of the [0,1] endpoints;
  // anything further outside is an input error. Zeros are dropped.
  void set(ElementId e, double v);

  void add(ElementId e, double delta) { set(e, get(e) + delta); }

  const std::map<ElementId, double>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  // Support of positive coordinates, ascending.
  ElementSet support() const;

  static FractionalPoint indicator(const ElementSet& s, double scale = 1.0);

  // x + scale * 1_S, clamped to [0,1].
  FractionalPoint plus_indicator(const ElementSet& s, double scale) const;

  // Coordinate-wise max with scale * 1_S.
  FractionalPoint max_with_indicator(const ElementSet& s,
                                     double scale = 1.0) const;

 private:
  std::map<ElementId, double> coords_;
};

struct EstimatorConfig {
  std::int64_t sample_count = 2000;
  std::uint64_t base_seed = 0;
};

// Exact F for coverage: sum_v w_v * (1 - prod_{e covers v} (1 - x_e)).
double exact_F_coverage(const CoverageFunction& f, const FractionalPoint& x);

// Exact dF/dx_u for coverage.
double exact_partial_coverage(const CoverageFunction& f,
                              const FractionalPoint& x, ElementId u);

// Mean of f over sample_count draws of R(x). Sample i uses the per-element
// uniforms to_unit(mix64(mix64(base_seed, i), e)), so the result is
// reproducible and order-independent.
double estimate_F(const SubmodularOracle& f, const FractionalPoint& x,
                  const EstimatorConfig& cfg);

struct EstimateStats {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
};

// Same estimate together with its standard error.
EstimateStats estimate_F_stats(const SubmodularOracle& f,
                               const FractionalPoint& x,
                               const EstimatorConfig& cfg);

// dF/dx_u estimated with coupled samples: the same inclusion draws for all
// elements other than u.
double estimate_partial(const SubmodularOracle& f, const FractionalPoint& x,
                        ElementId u, const EstimatorConfig& cfg);

// One handle for "evaluate F" that the algorithms can thread through:
// either the exact coverage path or the Monte-Carlo estimator.
class MultilinearEvaluator {
 public:
  static MultilinearEvaluator exact(const CoverageFunction& f);
  static MultilinearEvaluator sampled(const SubmodularOracle& f,
                                      EstimatorConfig cfg);

  bool is_exact() const { return coverage_ != nullptr; }
  const SubmodularOracle& oracle() const { return *oracle_; }

  double value(const FractionalPoint& x) const;
  double partial(const FractionalPoint& x, ElementId u) const;

  // Same evaluator with a reseeded estimator (no-op in exact mode).
  MultilinearEvaluator reseeded(std::uint64_t seed) const;

 private:
  MultilinearEvaluator(const CoverageFunction* coverage,
                       const SubmodularOracle* oracle, EstimatorConfig cfg)
      : coverage_(coverage), oracle_(oracle), cfg_(cfg) {}

  const CoverageFunction* coverage_;
  const SubmodularOracle* oracle_;
  EstimatorConfig cfg_;
};

}  // namespace submax

#endif  // SUBMAX_MULTILINEAR_HPP_

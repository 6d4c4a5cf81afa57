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
// Single-pass semi-streaming maximization under a matroid constraint.
// Arriving elements are filed into geometric derivative buckets A_i, a
// fractional reference vector a is maintained, buckets far below the top
// are pruned, and at the end of the stream the surviving buckets are
// greedily packed into m candidate sets whose uniform convex combination
// is rounded to one independent set.

#ifndef SUBMAX_SINGLE_PASS_HPP_
#define SUBMAX_SINGLE_PASS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "submax/matroid.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"

namespace submax {

enum class ObjectiveMode { kMonotone, kNonMonotone };

struct SinglePassConfig {
  double epsilon = 0.1;
  ObjectiveMode mode = ObjectiveMode::kMonotone;

  // Derived constants.
  double alpha = 0.0;        // 1.1462 monotone, 1.9532 non-monotone
  int candidate_count = 0;   // m = ceil(3*alpha/epsilon)
  double bucket_ratio = 0.0; // c = m/(m-alpha)
  long long window_levels = 0;  // L = ceil(log_c(2c/(epsilon*(c-1))))
  double per_element_cap = 0.0; // p = 1/(m*(c-1)+1), non-monotone only

  static SinglePassConfig make(double epsilon, ObjectiveMode mode);
};

struct SinglePassReport {
  std::size_t max_stored = 0;     // peak of sum |A_i| over live buckets
  std::size_t memory_bound = 0;   // (L+3)*rank + L
  std::uint64_t value_oracle_calls = 0;
  std::uint64_t independence_calls = 0;
};

struct SinglePassOutput {
  std::vector<ElementSet> candidates;  // S_0 .. S_{m-1}
  FractionalPoint point;               // s = (1/m) * sum 1_{S_k}
  ElementSet solution;                 // rounded R, independent
  double value = 0.0;                  // f(R)
  SinglePassReport report;
};

class SinglePassRun {
 public:
  struct Bucket {
    ElementSet elements;                 // A_i, in insertion order
    std::map<ElementId, double> shares;  // a_i, sparse
  };

  SinglePassRun(const SinglePassConfig& cfg, const MatroidOracle& matroid,
                const SubmodularOracle& f, MultilinearEvaluator evaluator);

  // Feeds the next stream element. Throws std::invalid_argument if u was
  // already processed.
  void process(ElementId u);

  // Builds the candidate sets, the fractional point and the rounded
  // solution. Requires the stream to be fully consumed by the caller.
  SinglePassOutput finalize(int round_trials, std::uint64_t seed) const;

  const SinglePassConfig& config() const { return cfg_; }
  const std::map<long long, Bucket>& buckets() const { return buckets_; }
  const FractionalPoint& reference_vector() const { return accumulated_; }
  std::optional<long long> prune_index() const { return prune_index_; }
  std::size_t stored_elements() const { return stored_; }
  std::size_t max_stored() const { return max_stored_; }
  std::size_t memory_bound() const;

 private:
  long long derivative_level(double derivative) const;
  double ratio_power(long long i) const;
  void refresh_after_arrival();

  SinglePassConfig cfg_;
  const MatroidOracle& matroid_;
  const SubmodularOracle& f_;
  MultilinearEvaluator evaluator_;

  std::map<long long, Bucket> buckets_;
  FractionalPoint accumulated_;            // a = sum_{i >= b} a_i
  std::optional<long long> prune_index_;   // b; empty means -infinity
  std::vector<bool> processed_;
  std::size_t stored_ = 0;
  std::size_t max_stored_ = 0;
  double singleton_scale_ = 0.0;  // max singleton value seen (MC guard)
  mutable std::map<long long, double> power_cache_;
  std::uint64_t f_calls_start_ = 0;
  std::uint64_t indep_calls_start_ = 0;
};

// Convenience wrapper: stream `order` through a fresh run and finalize.
SinglePassOutput run_single_pass(const SinglePassConfig& cfg,
                                 const MatroidOracle& matroid,
                                 const SubmodularOracle& f,
                                 const MultilinearEvaluator& evaluator,
                                 const std::vector<ElementId>& order,
                                 int round_trials, std::uint64_t seed);

}  // namespace submax

#endif  // SUBMAX_SINGLE_PASS_HPP_

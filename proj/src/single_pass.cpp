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

#include "submax/single_pass.hpp"

#include <cmath>
#include <stdexcept>

#include "submax/check.hpp"
#include "submax/rounding.hpp"

namespace submax {

namespace {

constexpr double kAlphaMonotone = 1.1462;
constexpr double kAlphaNonMonotone = 1.9532;

// Relative margin on the positivity guard under Monte-Carlo noise.
constexpr double kGuardScale = 1e-12;

long long floor_mod(long long i, long long m) {
  long long r = i % m;
  return r < 0 ? r + m : r;
}

}  // namespace

SinglePassConfig SinglePassConfig::make(double epsilon, ObjectiveMode mode) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  SinglePassConfig cfg;
  cfg.epsilon = epsilon;
  cfg.mode = mode;
  cfg.alpha =
      mode == ObjectiveMode::kMonotone ? kAlphaMonotone : kAlphaNonMonotone;
  cfg.candidate_count =
      static_cast<int>(std::ceil(3.0 * cfg.alpha / epsilon));
  double m = static_cast<double>(cfg.candidate_count);
  cfg.bucket_ratio = m / (m - cfg.alpha);
  double c = cfg.bucket_ratio;
  cfg.window_levels = static_cast<long long>(
      std::ceil(std::log(2.0 * c / (epsilon * (c - 1.0))) / std::log(c)));
  SUBMAX_CHECK(c > 1.0 && cfg.window_levels >= 1, "bad derived constants");
  if (mode == ObjectiveMode::kNonMonotone) {
    cfg.per_element_cap = 1.0 / (m * (c - 1.0) + 1.0);
    SUBMAX_CHECK(cfg.per_element_cap > 0.0 && cfg.per_element_cap < 1.0,
                 "cap outside (0,1)");
  }
  return cfg;
}

SinglePassRun::SinglePassRun(const SinglePassConfig& cfg,
                             const MatroidOracle& matroid,
                             const SubmodularOracle& f,
                             MultilinearEvaluator evaluator)
    : cfg_(cfg),
      matroid_(matroid),
      f_(f),
      evaluator_(std::move(evaluator)),
      processed_(matroid.ground_size(), false),
      f_calls_start_(f.value_calls()),
      indep_calls_start_(matroid.independence_calls()) {
  if (cfg_.candidate_count <= 0) {
    throw std::invalid_argument("config not derived; use SinglePassConfig::make");
  }
}

std::size_t SinglePassRun::memory_bound() const {
  auto rank = static_cast<std::size_t>(matroid_.rank_total());
  auto levels = static_cast<std::size_t>(cfg_.window_levels);
  return (levels + 3) * rank + levels;
}

double SinglePassRun::ratio_power(long long i) const {
  auto it = power_cache_.find(i);
  if (it != power_cache_.end()) return it->second;
  // Square-and-multiply keeps rounding error at O(log |i|) ulps even for
  // the far-negative levels near the pruning boundary.
  unsigned long long e = static_cast<unsigned long long>(i < 0 ? -i : i);
  double base = cfg_.bucket_ratio;
  double result = 1.0;
  while (e != 0) {
    if (e & 1ULL) result *= base;
    base *= base;
    e >>= 1ULL;
  }
  if (i < 0) result = 1.0 / result;
  power_cache_.emplace(i, result);
  return result;
}

long long SinglePassRun::derivative_level(double derivative) const {
  // Largest i with c^i <= derivative; float logs are corrected because c
  // is close to 1 and boundary errors shift bucket indices.
  long long i = static_cast<long long>(
      std::floor(std::log(derivative) / std::log(cfg_.bucket_ratio)));
  while (ratio_power(i + 1) <= derivative) ++i;
  while (ratio_power(i) > derivative) --i;
  return i;
}

void SinglePassRun::process(ElementId u) {
  if (u < 0 || u >= matroid_.ground_size()) {
    throw std::invalid_argument("element id outside ground set");
  }
  if (processed_[u]) {
    throw std::invalid_argument("element processed twice");
  }
  processed_[u] = true;

  double guard = 0.0;
  if (!evaluator_.is_exact()) {
    singleton_scale_ = std::max(singleton_scale_, f_.value({u}));
    guard = kGuardScale * singleton_scale_;
  }
  double derivative = evaluator_.partial(accumulated_, u);
  if (!(derivative > guard)) return;

  long long top = derivative_level(derivative);
  long long low = top - matroid_.rank_total() - cfg_.window_levels;
  if (prune_index_ && *prune_index_ > low) low = *prune_index_;

  double added_mass = 0.0;
  bool capped = cfg_.mode == ObjectiveMode::kNonMonotone;
  for (long long i = low; i <= top; ++i) {
    if (capped && !approx_le(added_mass, cfg_.per_element_cap)) break;
    Bucket& bucket = buckets_[i];
    if (!matroid_.is_independent(set_plus(bucket.elements, u))) continue;
    bucket.elements.push_back(u);
    double share =
        ratio_power(i) / (static_cast<double>(cfg_.candidate_count) * derivative);
    bucket.shares[u] += share;
    added_mass += share;
    ++stored_;
    max_stored_ = std::max(max_stored_, stored_);
    SUBMAX_CHECK(stored_ <= memory_bound(), "stored elements exceed bound");
  }

  refresh_after_arrival();
}

void SinglePassRun::refresh_after_arrival() {
  // h = largest index whose suffix holds at least rank(M) elements; the
  // pruning index moves to h - L. With no such index b stays put.
  long long rank = matroid_.rank_total();
  long long suffix = 0;
  std::optional<long long> cutoff;
  for (auto it = buckets_.rbegin(); it != buckets_.rend(); ++it) {
    suffix += static_cast<long long>(it->second.elements.size());
    if (suffix >= rank) {
      cutoff = it->first - cfg_.window_levels;
      break;
    }
  }
  if (cutoff) {
    SUBMAX_CHECK(!prune_index_ || *cutoff >= *prune_index_,
                 "pruning index decreased");
    prune_index_ = cutoff;
  }

  for (auto it = buckets_.begin();
       it != buckets_.end() && prune_index_ && it->first < *prune_index_;) {
    stored_ -= it->second.elements.size();
    it = buckets_.erase(it);
  }

  FractionalPoint a;
  for (const auto& [i, bucket] : buckets_) {
    for (const auto& [e, share] : bucket.shares) a.add(e, share);
  }
  for (const auto& [e, v] : a.coords()) {
    SUBMAX_CHECK(v >= 0.0 && v <= 1.0, "reference vector left [0,1]");
  }
  accumulated_ = std::move(a);
}

SinglePassOutput SinglePassRun::finalize(int round_trials,
                                         std::uint64_t seed) const {
  SinglePassOutput out;
  out.candidates.assign(cfg_.candidate_count, {});
  out.report.max_stored = max_stored_;
  out.report.memory_bound = memory_bound();

  bool any = false;
  for (const auto& [i, bucket] : buckets_) {
    if (!bucket.elements.empty()) any = true;
  }
  if (any) {
    // Descending bucket order; ties inside a bucket by insertion order.
    for (auto it = buckets_.rbegin(); it != buckets_.rend(); ++it) {
      ElementSet& target =
          out.candidates[floor_mod(it->first, cfg_.candidate_count)];
      for (ElementId u : it->second.elements) {
        if (set_contains(target, u)) continue;
        ElementSet extended = set_plus(target, u);
        if (matroid_.is_independent(extended)) target = std::move(extended);
      }
    }
    double share = 1.0 / static_cast<double>(cfg_.candidate_count);
    ConvexCombination comb;
    comb.reserve(out.candidates.size());
    for (const ElementSet& s : out.candidates) {
      SUBMAX_CHECK(static_cast<int>(s.size()) <= matroid_.rank_total(),
                   "candidate larger than rank");
      out.point = out.point.plus_indicator(s, share);
      comb.push_back({s, share});
    }
    out.solution = round_best_of(matroid_, comb, f_, round_trials, seed);
  }
  out.value = f_.value(out.solution);
  out.report.value_oracle_calls = f_.value_calls() - f_calls_start_;
  out.report.independence_calls =
      matroid_.independence_calls() - indep_calls_start_;
  return out;
}

SinglePassOutput run_single_pass(const SinglePassConfig& cfg,
                                 const MatroidOracle& matroid,
                                 const SubmodularOracle& f,
                                 const MultilinearEvaluator& evaluator,
                                 const std::vector<ElementId>& order,
                                 int round_trials, std::uint64_t seed) {
  SinglePassRun run(cfg, matroid, f, evaluator);
  for (ElementId u : order) run.process(u);
  return run.finalize(round_trials, seed);
}

}  // namespace submax

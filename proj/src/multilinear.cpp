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

#include "submax/multilinear.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "submax/check.hpp"
#include "submax/rng.hpp"

namespace submax {

void FractionalPoint::set(ElementId e, double v) {
  if (v < 0.0) {
    if (v < -kCmpTol) {
      throw std::invalid_argument("coordinate below 0");
    }
    v = 0.0;
  }
  if (v > 1.0) {
    if (v > 1.0 + kCmpTol) {
      throw std::invalid_argument("coordinate above 1");
    }
    v = 1.0;
  }
  if (v == 0.0) {
    coords_.erase(e);
  } else {
    coords_[e] = v;
  }
}

ElementSet FractionalPoint::support() const {
  ElementSet s;
  s.reserve(coords_.size());
  for (const auto& [e, v] : coords_) s.push_back(e);
  return s;
}

FractionalPoint FractionalPoint::indicator(const ElementSet& s, double scale) {
  FractionalPoint x;
  for (ElementId e : s) x.set(e, scale);
  return x;
}

FractionalPoint FractionalPoint::plus_indicator(const ElementSet& s,
                                                double scale) const {
  FractionalPoint x = *this;
  for (ElementId e : s) x.add(e, scale);
  return x;
}

FractionalPoint FractionalPoint::max_with_indicator(const ElementSet& s,
                                                    double scale) const {
  FractionalPoint x = *this;
  for (ElementId e : s) {
    if (x.get(e) < scale) x.set(e, scale);
  }
  return x;
}

double exact_F_coverage(const CoverageFunction& f, const FractionalPoint& x) {
  // survive[v] accumulates prod (1 - x_e) over covering elements in
  // supp(x); untouched points contribute nothing.
  std::vector<double> survive(f.universe_size(), 1.0);
  std::vector<std::uint8_t> is_touched(f.universe_size(), 0);
  std::vector<int> touched;
  for (const auto& [e, xe] : x.coords()) {
    if (e < 0 || e >= f.ground_size()) {
      throw std::invalid_argument("coordinate id outside ground set");
    }
    for (int v : f.covers(e)) {
      if (!is_touched[v]) {
        is_touched[v] = 1;
        touched.push_back(v);
      }
      survive[v] *= 1.0 - xe;
    }
  }
  double total = 0.0;
  for (int v : touched) {
    total += f.point_weight()[v] * (1.0 - survive[v]);
  }
  return total;
}

double exact_partial_coverage(const CoverageFunction& f,
                              const FractionalPoint& x, ElementId u) {
  if (u < 0 || u >= f.ground_size()) {
    throw std::invalid_argument("element id outside ground set");
  }
  // dF/dx_u = sum over points covered by u of w_v * prod_{e != u} (1 - x_e).
  double total = 0.0;
  for (int v : f.covers(u)) {
    double survive = 1.0;
    for (int e : f.covered_by(v)) {
      if (e == u) continue;
      double xe = x.get(e);
      if (xe > 0.0) survive *= 1.0 - xe;
    }
    total += f.point_weight()[v] * survive;
  }
  return total;
}

namespace {

// Pairwise sum: order-insensitive up to a fixed tree shape and accurate for
// large sample counts.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double mean_of(const std::vector<double>& samples) {
  double lo = samples[0], hi = samples[0];
  for (double s : samples) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  // Degenerate distributions (e.g. integral points) come back exact.
  if (lo == hi) return lo;
  return pairwise_sum(samples.data(), samples.size()) /
         static_cast<double>(samples.size());
}

void check_config(const EstimatorConfig& cfg) {
  if (cfg.sample_count < 1) {
    throw std::invalid_argument("sample_count must be >= 1");
  }
}

}  // namespace

namespace {

std::vector<double> draw_value_samples(const SubmodularOracle& f,
                                       const FractionalPoint& x,
                                       const EstimatorConfig& cfg) {
  std::vector<double> samples(cfg.sample_count);
  ElementSet draw;
  for (std::int64_t i = 0; i < cfg.sample_count; ++i) {
    std::uint64_t sample_seed =
        mix64(cfg.base_seed, static_cast<std::uint64_t>(i));
    draw.clear();
    for (const auto& [e, xe] : x.coords()) {
      if (to_unit(mix64(sample_seed, static_cast<std::uint64_t>(e))) < xe) {
        draw.push_back(e);
      }
    }
    samples[i] = f.value(draw);
  }
  return samples;
}

}  // namespace

double estimate_F(const SubmodularOracle& f, const FractionalPoint& x,
                  const EstimatorConfig& cfg) {
  check_config(cfg);
  return mean_of(draw_value_samples(f, x, cfg));
}

EstimateStats estimate_F_stats(const SubmodularOracle& f,
                               const FractionalPoint& x,
                               const EstimatorConfig& cfg) {
  check_config(cfg);
  std::vector<double> samples = draw_value_samples(f, x, cfg);
  EstimateStats stats;
  stats.mean = mean_of(samples);
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - stats.mean) * (s - stats.mean);
    double n = static_cast<double>(samples.size());
    stats.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return stats;
}

double estimate_partial(const SubmodularOracle& f, const FractionalPoint& x,
                        ElementId u, const EstimatorConfig& cfg) {
  check_config(cfg);
  if (u < 0 || u >= f.ground_size()) {
    throw std::invalid_argument("element id outside ground set");
  }
  std::vector<double> samples(cfg.sample_count);
  ElementSet draw;
  for (std::int64_t i = 0; i < cfg.sample_count; ++i) {
    std::uint64_t sample_seed = mix64(cfg.base_seed, static_cast<std::uint64_t>(i));
    draw.clear();
    for (const auto& [e, xe] : x.coords()) {
      if (e == u) continue;
      if (to_unit(mix64(sample_seed, static_cast<std::uint64_t>(e))) < xe) {
        draw.push_back(e);
      }
    }
    double without = f.value(draw);
    draw.push_back(u);
    samples[i] = f.value(draw) - without;
    draw.pop_back();
  }
  return mean_of(samples);
}

MultilinearEvaluator MultilinearEvaluator::exact(const CoverageFunction& f) {
  return MultilinearEvaluator(&f, &f, EstimatorConfig{});
}

MultilinearEvaluator MultilinearEvaluator::sampled(const SubmodularOracle& f,
                                                   EstimatorConfig cfg) {
  check_config(cfg);
  return MultilinearEvaluator(nullptr, &f, cfg);
}

double MultilinearEvaluator::value(const FractionalPoint& x) const {
  if (coverage_ != nullptr) return exact_F_coverage(*coverage_, x);
  return estimate_F(*oracle_, x, cfg_);
}

double MultilinearEvaluator::partial(const FractionalPoint& x,
                                     ElementId u) const {
  if (coverage_ != nullptr) return exact_partial_coverage(*coverage_, x, u);
  return estimate_partial(*oracle_, x, u, cfg_);
}

MultilinearEvaluator MultilinearEvaluator::reseeded(std::uint64_t seed) const {
  MultilinearEvaluator out = *this;
  out.cfg_.base_seed = seed;
  return out;
}

}  // namespace submax

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
// Instance and stream-order files, random instance generators, brute-force
// and greedy baselines, and the experiment runner behind the CLI.

#ifndef SUBMAX_HARNESS_HPP_
#define SUBMAX_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "submax/hardness.hpp"
#include "submax/matroid.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/single_pass.hpp"

namespace submax {

// A matroid/objective pair over one ground set, as described by an
// instance JSON file (schema 1; unknown fields are rejected).
struct Instance {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::unique_ptr<MatroidOracle> matroid;
  std::unique_ptr<SubmodularOracle> objective;

  int ground_size() const { return matroid->ground_size(); }
  // Non-null iff the objective supports the exact multilinear path.
  const CoverageFunction* coverage() const;
};

Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

// Stream order: either an explicit permutation or a named generator.
struct OrderSpec {
  enum class Kind {
    kExplicit,
    kRandom,
    kAdversarialIdDescending,
    kBySingletonValueDescending,
  };
  Kind kind = Kind::kRandom;
  std::vector<ElementId> order;  // kExplicit only
  std::uint64_t seed = 0;        // kRandom only
  std::string source;            // file path or spec text, for reports

  static OrderSpec random(std::uint64_t seed);
  static OrderSpec explicit_order(std::vector<ElementId> order);
};

OrderSpec load_order(const std::string& path);
OrderSpec parse_order(const std::string& json_text);

// The concrete permutation for an instance (validates it is one).
std::vector<ElementId> resolve_order(const OrderSpec& spec,
                                     const Instance& instance);

// Generators. All randomness flows from the seed.
struct CoverageGenParams {
  int elements = 12;
  int universe = 24;
  double density = 0.25;
};
enum class MatroidKind { kUniform, kPartition, kGraphic };

Instance gen_coverage_instance(const CoverageGenParams& params,
                               MatroidKind matroid_kind, int rank_limit,
                               std::uint64_t seed);
Instance gen_cut_instance(int elements, double density,
                          MatroidKind matroid_kind, int rank_limit,
                          std::uint64_t seed);
Instance gen_hardness_instance(int layer_count, int copies,
                               const std::string& graph_spec, double eps,
                               std::uint64_t seed);

struct BruteForceResult {
  ElementSet set;
  double value = 0.0;
};

// Exact max of f over independent sets (cardinality-ordered pruned
// enumeration); refuses ground sets above `cap`.
BruteForceResult brute_force_opt(const MatroidOracle& m,
                                 const SubmodularOracle& f, int cap = 18);

// Exact max of f over bases of M.
BruteForceResult brute_force_best_base(const MatroidOracle& m,
                                       const SubmodularOracle& f,
                                       int cap = 18);

// Adds the feasible element of largest marginal until none improves.
ElementSet offline_greedy(const MatroidOracle& m, const SubmodularOracle& f);

// One experiment row.
struct RunRequest {
  std::string algorithm;  // single-pass | multipass | dscg | two-player
  double epsilon = 0.1;   // single-pass, dscg
  double delta = 0.1;     // multipass
  ObjectiveMode mode = ObjectiveMode::kMonotone;
  bool exact_oracle = false;
  std::int64_t samples = 2000;
  int round_trials = 32;
  int two_player_h = 125;
  std::vector<ElementId> alice_split;  // two-player
  std::uint64_t seed = 0;
  int reference_cap = 18;
};

struct RunReport {
  int plan_index = 0;
  std::string algorithm;
  std::string instance_name;
  std::string order_desc;
  std::uint64_t seed = 0;
  std::string config_echo;
  ElementSet solution;
  double value = 0.0;
  std::optional<double> reference;  // brute-force OPT when within cap
  std::optional<double> ratio;
  std::size_t max_stored = 0;
  int passes = 0;
  std::uint64_t value_oracle_calls = 0;
  std::uint64_t independence_calls = 0;
  std::vector<double> per_pass_values;  // multipass only
  double elapsed_ms = 0.0;
  std::string error;  // non-empty if the run failed
};

// Runs one algorithm; the reported solution is re-validated (independence
// and value recomputed from scratch) before returning.
RunReport run_algorithm(const Instance& instance, const OrderSpec& order,
                        const RunRequest& request);

struct PlanEntry {
  std::string instance_path;
  std::string order_path;  // empty means random order from the seed
  RunRequest request;
};

std::vector<PlanEntry> load_plan(const std::string& path);

// Executes every row; per-run errors are recorded in the row and the batch
// continues. Rows come back in plan order.
std::vector<RunReport> run_experiment(const std::vector<PlanEntry>& plan);

// Fixed CSV columns; wall time is off by default so identical (plan, seed)
// inputs produce byte-identical reports.
void write_csv(const std::vector<RunReport>& reports, std::ostream& out,
               bool include_timings = false);

std::string report_to_json(const RunReport& report);

// Compact, locale-independent float formatting used by every report.
std::string format_double(double v);

}  // namespace submax

#endif  // SUBMAX_HARNESS_HPP_

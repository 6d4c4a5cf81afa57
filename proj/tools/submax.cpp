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
// Command-line front end: instance generation, algorithm runs, batch
// benchmarks and the verification suite.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "submax/acceptance.hpp"
#include "submax/harness.hpp"

namespace {

using namespace submax;

OrderSpec order_from_flag(const std::string& order_path, std::uint64_t seed) {
  if (order_path.empty()) return OrderSpec::random(seed);
  return load_order(order_path);
}

std::vector<ElementId> split_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::ordered_json j;
  in >> j;
  if (!j.is_object() || !j.contains("alice")) {
    throw std::invalid_argument(path + ": expected {\"schema\":1,\"alice\":[ids]}");
  }
  return j.at("alice").get<std::vector<ElementId>>();
}

int emit_run(const RunReport& report) {
  std::cout << report_to_json(report);
  return report.error.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming submodular maximization under matroid constraints"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);

  struct {
    int elements = 12;
    int universe = 24;
    double density = 0.25;
    std::string matroid = "partition";
    int rank_limit = 5;
    std::uint64_t seed = 0;
    std::string output;
  } gen_cov;
  auto* gen_coverage = gen->add_subcommand("coverage", "random weighted coverage");
  gen_coverage->add_option("--elements", gen_cov.elements);
  gen_coverage->add_option("--universe", gen_cov.universe);
  gen_coverage->add_option("--density", gen_cov.density);
  gen_coverage->add_option("--matroid", gen_cov.matroid)
      ->check(CLI::IsMember({"uniform", "partition", "graphic"}));
  gen_coverage->add_option("--rank", gen_cov.rank_limit);
  gen_coverage->add_option("--seed", gen_cov.seed);
  gen_coverage->add_option("-o,--output", gen_cov.output)->required();

  struct {
    int elements = 10;
    double density = 0.4;
    std::string matroid = "uniform";
    int rank_limit = 4;
    std::uint64_t seed = 0;
    std::string output;
  } gen_cut_opts;
  auto* gen_cut = gen->add_subcommand("cut", "random weighted cut");
  gen_cut->add_option("--elements", gen_cut_opts.elements);
  gen_cut->add_option("--density", gen_cut_opts.density);
  gen_cut->add_option("--matroid", gen_cut_opts.matroid)
      ->check(CLI::IsMember({"uniform", "partition", "graphic"}));
  gen_cut->add_option("--rank", gen_cut_opts.rank_limit);
  gen_cut->add_option("--seed", gen_cut_opts.seed);
  gen_cut->add_option("-o,--output", gen_cut_opts.output)->required();

  struct {
    int p = 2;
    int n = 3;
    std::string graphs = "path:3";
    double eps = 0.0;
    std::uint64_t seed = 0;
    std::string output;
  } gen_hard;
  auto* gen_hardness = gen->add_subcommand("hardness", "layered hard family");
  gen_hardness->add_option("--p", gen_hard.p);
  gen_hardness->add_option("--n", gen_hard.n);
  gen_hardness->add_option("--graphs", gen_hard.graphs);
  gen_hardness->add_option("--eps", gen_hard.eps);
  gen_hardness->add_option("--seed", gen_hard.seed);
  gen_hardness->add_option("-o,--output", gen_hard.output)->required();

  // ---- run ----------------------------------------------------------
  auto* run = app.add_subcommand("run", "run one algorithm on one instance");
  run->require_subcommand(1);

  struct {
    std::string instance;
    std::string order;
    double epsilon = 0.1;
    std::string mode = "monotone";
    std::int64_t samples = 2000;
    bool exact_oracle = false;
    int round_trials = 32;
    std::uint64_t seed = 0;
  } sp;
  auto* run_sp = run->add_subcommand("single-pass", "single-pass streaming");
  run_sp->add_option("--instance", sp.instance)->required();
  run_sp->add_option("--order", sp.order);
  run_sp->add_option("--epsilon", sp.epsilon);
  run_sp->add_option("--mode", sp.mode)
      ->check(CLI::IsMember({"monotone", "nonmonotone"}));
  run_sp->add_option("--samples", sp.samples);
  run_sp->add_flag("--exact-oracle", sp.exact_oracle);
  run_sp->add_option("--round-trials", sp.round_trials);
  run_sp->add_option("--seed", sp.seed);

  struct {
    std::string instance;
    std::string order;
    double delta = 0.1;
    std::uint64_t seed = 0;
  } mp;
  auto* run_mp = run->add_subcommand("multipass", "multi-pass local search");
  run_mp->add_option("--instance", mp.instance)->required();
  run_mp->add_option("--order", mp.order);
  run_mp->add_option("--delta", mp.delta);
  run_mp->add_option("--seed", mp.seed);

  struct {
    std::string instance;
    std::string order;
    double epsilon = 0.2;
    std::int64_t samples = 2000;
    bool exact_oracle = false;
    int round_trials = 32;
    std::uint64_t seed = 0;
  } dg;
  auto* run_dscg = run->add_subcommand("dscg", "data stream continuous greedy");
  run_dscg->add_option("--instance", dg.instance)->required();
  run_dscg->add_option("--order", dg.order);
  run_dscg->add_option("--epsilon", dg.epsilon);
  run_dscg->add_option("--samples", dg.samples);
  run_dscg->add_flag("--exact-oracle", dg.exact_oracle);
  run_dscg->add_option("--round-trials", dg.round_trials);
  run_dscg->add_option("--seed", dg.seed);

  struct {
    std::string instance;
    std::string split;
    int h = 125;
    std::uint64_t seed = 0;
  } tp;
  auto* run_tp = run->add_subcommand("two-player", "Alice/Bob protocol");
  run_tp->set_help_flag("--help", "print help");  // frees -h for the h flag
  run_tp->add_option("--instance", tp.instance)->required();
  run_tp->add_option("--split", tp.split);
  run_tp->add_option("-h,--h", tp.h);
  run_tp->add_option("--seed", tp.seed);

  // ---- bench --------------------------------------------------------
  struct {
    std::string plan;
    std::string output;
    bool timings = false;
  } bench_opts;
  auto* bench = app.add_subcommand("bench", "execute a plan file");
  bench->add_option("--plan", bench_opts.plan)->required();
  bench->add_option("-o,--output", bench_opts.output)->required();
  bench->add_flag("--timings", bench_opts.timings,
                  "append wall-time column (breaks byte-identical reports)");

  // ---- verify -------------------------------------------------------
  std::vector<int> verify_only;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--only", verify_only,
                     "criterion ids to run (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_coverage->parsed()) {
      MatroidKind kind = gen_cov.matroid == "uniform"    ? MatroidKind::kUniform
                         : gen_cov.matroid == "graphic" ? MatroidKind::kGraphic
                                                        : MatroidKind::kPartition;
      CoverageGenParams params{gen_cov.elements, gen_cov.universe,
                               gen_cov.density};
      save_instance(
          gen_coverage_instance(params, kind, gen_cov.rank_limit, gen_cov.seed),
          gen_cov.output);
      return 0;
    }
    if (gen_cut->parsed()) {
      MatroidKind kind = gen_cut_opts.matroid == "uniform"
                             ? MatroidKind::kUniform
                         : gen_cut_opts.matroid == "graphic"
                             ? MatroidKind::kGraphic
                             : MatroidKind::kPartition;
      save_instance(gen_cut_instance(gen_cut_opts.elements,
                                     gen_cut_opts.density, kind,
                                     gen_cut_opts.rank_limit,
                                     gen_cut_opts.seed),
                    gen_cut_opts.output);
      return 0;
    }
    if (gen_hardness->parsed()) {
      save_instance(gen_hardness_instance(gen_hard.p, gen_hard.n,
                                          gen_hard.graphs, gen_hard.eps,
                                          gen_hard.seed),
                    gen_hard.output);
      return 0;
    }

    if (run_sp->parsed()) {
      Instance instance = load_instance(sp.instance);
      RunRequest request;
      request.algorithm = "single-pass";
      request.epsilon = sp.epsilon;
      request.mode = sp.mode == "monotone" ? ObjectiveMode::kMonotone
                                           : ObjectiveMode::kNonMonotone;
      request.samples = sp.samples;
      request.exact_oracle = sp.exact_oracle;
      request.round_trials = sp.round_trials;
      request.seed = sp.seed;
      return emit_run(
          run_algorithm(instance, order_from_flag(sp.order, sp.seed), request));
    }
    if (run_mp->parsed()) {
      Instance instance = load_instance(mp.instance);
      RunRequest request;
      request.algorithm = "multipass";
      request.delta = mp.delta;
      request.seed = mp.seed;
      return emit_run(
          run_algorithm(instance, order_from_flag(mp.order, mp.seed), request));
    }
    if (run_dscg->parsed()) {
      Instance instance = load_instance(dg.instance);
      RunRequest request;
      request.algorithm = "dscg";
      request.epsilon = dg.epsilon;
      request.samples = dg.samples;
      request.exact_oracle = dg.exact_oracle;
      request.round_trials = dg.round_trials;
      request.seed = dg.seed;
      return emit_run(
          run_algorithm(instance, order_from_flag(dg.order, dg.seed), request));
    }
    if (run_tp->parsed()) {
      Instance instance = load_instance(tp.instance);
      RunRequest request;
      request.algorithm = "two-player";
      request.two_player_h = tp.h;
      request.seed = tp.seed;
      if (!tp.split.empty()) request.alice_split = split_from_file(tp.split);
      return emit_run(
          run_algorithm(instance, OrderSpec::random(tp.seed), request));
    }

    if (bench->parsed()) {
      auto reports = run_experiment(load_plan(bench_opts.plan));
      std::ofstream out(bench_opts.output);
      if (!out) throw std::runtime_error("cannot write " + bench_opts.output);
      write_csv(reports, out, bench_opts.timings);
      bool any_error = false;
      for (const auto& r : reports) {
        if (!r.error.empty()) any_error = true;
      }
      return any_error ? 1 : 0;
    }

    if (verify->parsed()) {
      return acceptance::run_as_main(std::cout, verify_only);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

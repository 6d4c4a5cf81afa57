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

#include "submax/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "submax/check.hpp"
#include "submax/continuous_greedy.hpp"
#include "submax/local_search.hpp"
#include "submax/rng.hpp"
#include "submax/rounding.hpp"
#include "submax/two_player.hpp"

namespace submax {

using nlohmann::ordered_json;

namespace {

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) {
    throw std::invalid_argument(where + ": expected a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (required.count(key) == 0 && optional.count(key) == 0) {
      throw std::invalid_argument(where + ": unknown field \"" + key + "\"");
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) {
      throw std::invalid_argument(where + ": missing field \"" + key + "\"");
    }
  }
}

void require_schema(const ordered_json& obj, const std::string& where) {
  if (!obj.contains("schema") || !obj["schema"].is_number_integer() ||
      obj["schema"].get<int>() != 1) {
    throw std::invalid_argument(where + ": expected \"schema\": 1");
  }
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j;
  in >> j;
  return j;
}

std::unique_ptr<MatroidOracle> parse_matroid(const ordered_json& j,
                                             int ground_size) {
  require_keys(j, "matroid", {"type"},
               {"k", "blocks", "capacities", "vertices", "edges"});
  std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    require_keys(j, "matroid(uniform)", {"type", "k"});
    return std::make_unique<UniformMatroid>(ground_size, j.at("k").get<int>());
  }
  if (type == "partition") {
    require_keys(j, "matroid(partition)", {"type", "blocks", "capacities"});
    auto blocks = j.at("blocks").get<std::vector<int>>();
    if (static_cast<int>(blocks.size()) != ground_size) {
      throw std::invalid_argument("matroid: one block per element");
    }
    return std::make_unique<PartitionMatroid>(
        std::move(blocks), j.at("capacities").get<std::vector<int>>());
  }
  if (type == "graphic") {
    require_keys(j, "matroid(graphic)", {"type", "vertices", "edges"});
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    if (static_cast<int>(edges.size()) != ground_size) {
      throw std::invalid_argument("matroid: one edge per element");
    }
    return std::make_unique<GraphicMatroid>(j.at("vertices").get<int>(),
                                            std::move(edges));
  }
  throw std::invalid_argument("matroid: unknown type \"" + type + "\"");
}

std::unique_ptr<SubmodularOracle> parse_objective(const ordered_json& j,
                                                  int ground_size) {
  require_keys(j, "objective", {"type"},
               {"universe", "weights", "covers", "edges", "copies", "layers"});
  std::string type = j.at("type").get<std::string>();
  if (type == "coverage") {
    require_keys(j, "objective(coverage)",
                 {"type", "universe", "weights", "covers"});
    auto covers = j.at("covers").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(covers.size()) != ground_size) {
      throw std::invalid_argument("objective: one cover list per element");
    }
    return std::make_unique<CoverageFunction>(
        j.at("universe").get<int>(), std::move(covers),
        j.at("weights").get<std::vector<double>>());
  }
  if (type == "cut") {
    require_keys(j, "objective(cut)", {"type", "edges"});
    std::vector<CutFunction::Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                       e.at(2).get<double>()});
    }
    return std::make_unique<CutFunction>(ground_size, std::move(edges));
  }
  if (type == "hardness-family") {
    require_keys(j, "objective(hardness-family)", {"type", "copies", "layers"});
    LayeredInstance instance;
    instance.copies = j.at("copies").get<int>();
    for (const auto& lj : j.at("layers")) {
      require_keys(lj, "layer", {"edges", "matching_bound", "secret_copy"});
      LayeredInstance::Layer layer;
      for (const auto& e : lj.at("edges")) {
        layer.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      }
      layer.matching_bound = lj.at("matching_bound").get<double>();
      layer.secret_copy = lj.at("secret_copy").get<int>();
      instance.layers.push_back(std::move(layer));
    }
    if (instance.ground_size() != ground_size) {
      throw std::invalid_argument(
          "objective: hardness ground size disagrees with instance");
    }
    return std::make_unique<LayeredFamilyFunction>(std::move(instance));
  }
  throw std::invalid_argument("objective: unknown type \"" + type + "\"");
}

ordered_json matroid_to_json(const MatroidOracle& m) {
  ordered_json j;
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    j["type"] = "uniform";
    j["k"] = u->capacity();
    return j;
  }
  if (const auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    j["type"] = "partition";
    j["blocks"] = p->block_of_element();
    j["capacities"] = p->block_capacity();
    return j;
  }
  if (const auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    j["type"] = "graphic";
    j["vertices"] = g->vertex_count();
    ordered_json edges = ordered_json::array();
    for (const auto& [a, b] : g->edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j;
  }
  throw std::invalid_argument("unserializable matroid type");
}

ordered_json objective_to_json(const SubmodularOracle& f) {
  ordered_json j;
  if (const auto* c = dynamic_cast<const CoverageFunction*>(&f)) {
    j["type"] = "coverage";
    j["universe"] = c->universe_size();
    j["weights"] = c->point_weight();
    ordered_json covers = ordered_json::array();
    for (int e = 0; e < c->ground_size(); ++e) covers.push_back(c->covers(e));
    j["covers"] = std::move(covers);
    return j;
  }
  if (const auto* c = dynamic_cast<const CutFunction*>(&f)) {
    j["type"] = "cut";
    ordered_json edges = ordered_json::array();
    for (const auto& e : c->edges()) edges.push_back({e.a, e.b, e.weight});
    j["edges"] = std::move(edges);
    return j;
  }
  if (const auto* h = dynamic_cast<const LayeredFamilyFunction*>(&f)) {
    j["type"] = "hardness-family";
    j["copies"] = h->instance().copies;
    ordered_json layers = ordered_json::array();
    for (const auto& layer : h->instance().layers) {
      ordered_json lj;
      ordered_json edges = ordered_json::array();
      for (const auto& [a, b] : layer.edges) edges.push_back({a, b});
      lj["edges"] = std::move(edges);
      lj["matching_bound"] = layer.matching_bound;
      lj["secret_copy"] = layer.secret_copy;
      layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);
    return j;
  }
  throw std::invalid_argument("unserializable objective type");
}

}  // namespace

const CoverageFunction* Instance::coverage() const {
  return dynamic_cast<const CoverageFunction*>(objective.get());
}

Instance parse_instance(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  require_keys(j, "instance", {"schema", "ground_size", "matroid", "objective"},
               {"metadata"});
  require_schema(j, "instance");
  int ground_size = j.at("ground_size").get<int>();
  Instance instance;
  if (j.contains("metadata")) {
    require_keys(j["metadata"], "metadata", {}, {"name", "seed"});
    if (j["metadata"].contains("name")) {
      instance.name = j["metadata"]["name"].get<std::string>();
    }
    if (j["metadata"].contains("seed")) {
      instance.seed = j["metadata"]["seed"].get<std::uint64_t>();
    }
  }
  instance.matroid = parse_matroid(j.at("matroid"), ground_size);
  instance.objective = parse_objective(j.at("objective"), ground_size);
  if (instance.objective->ground_size() != instance.matroid->ground_size()) {
    throw std::invalid_argument("instance: ground sizes disagree");
  }
  return instance;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Instance instance = parse_instance(buffer.str());
  if (instance.name.empty()) instance.name = path;
  return instance;
}

std::string instance_to_json(const Instance& instance) {
  ordered_json j;
  j["schema"] = 1;
  j["ground_size"] = instance.ground_size();
  if (!instance.name.empty() || instance.seed) {
    ordered_json meta;
    if (!instance.name.empty()) meta["name"] = instance.name;
    if (instance.seed) meta["seed"] = *instance.seed;
    j["metadata"] = std::move(meta);
  }
  j["matroid"] = matroid_to_json(*instance.matroid);
  j["objective"] = objective_to_json(*instance.objective);
  return j.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance);
}

OrderSpec OrderSpec::random(std::uint64_t seed) {
  OrderSpec spec;
  spec.kind = Kind::kRandom;
  spec.seed = seed;
  spec.source = "random(" + std::to_string(seed) + ")";
  return spec;
}

OrderSpec OrderSpec::explicit_order(std::vector<ElementId> order) {
  OrderSpec spec;
  spec.kind = Kind::kExplicit;
  spec.order = std::move(order);
  spec.source = "explicit";
  return spec;
}

OrderSpec parse_order(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  require_keys(j, "order", {"schema"}, {"order", "generator", "seed"});
  require_schema(j, "order");
  OrderSpec spec;
  if (j.contains("order")) {
    spec.kind = OrderSpec::Kind::kExplicit;
    spec.order = j["order"].get<std::vector<ElementId>>();
    spec.source = "explicit";
    return spec;
  }
  if (!j.contains("generator")) {
    throw std::invalid_argument("order: need \"order\" or \"generator\"");
  }
  std::string generator = j["generator"].get<std::string>();
  if (generator == "random") {
    spec.kind = OrderSpec::Kind::kRandom;
    spec.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
  } else if (generator == "adversarial-id-descending") {
    spec.kind = OrderSpec::Kind::kAdversarialIdDescending;
  } else if (generator == "by-singleton-value-descending") {
    spec.kind = OrderSpec::Kind::kBySingletonValueDescending;
  } else {
    throw std::invalid_argument("order: unknown generator \"" + generator +
                                "\"");
  }
  spec.source = generator;
  return spec;
}

OrderSpec load_order(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  OrderSpec spec = parse_order(buffer.str());
  spec.source = path + ":" + spec.source;
  return spec;
}

std::vector<ElementId> resolve_order(const OrderSpec& spec,
                                     const Instance& instance) {
  int n = instance.ground_size();
  std::vector<ElementId> order;
  switch (spec.kind) {
    case OrderSpec::Kind::kExplicit:
      order = spec.order;
      break;
    case OrderSpec::Kind::kRandom: {
      order.resize(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      Rng rng(mix64(spec.seed, 0x0edeu));
      rng.shuffle(order);
      break;
    }
    case OrderSpec::Kind::kAdversarialIdDescending:
      for (int i = n - 1; i >= 0; --i) order.push_back(i);
      break;
    case OrderSpec::Kind::kBySingletonValueDescending: {
      order.resize(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::vector<double> singleton(n);
      for (int i = 0; i < n; ++i) singleton[i] = instance.objective->value({i});
      std::stable_sort(order.begin(), order.end(),
                       [&](ElementId a, ElementId b) {
                         return singleton[a] > singleton[b];
                       });
      break;
    }
  }
  std::vector<std::uint8_t> seen(n, 0);
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("order is not a permutation of the ground set");
  }
  for (ElementId e : order) {
    if (e < 0 || e >= n || seen[e]) {
      throw std::invalid_argument(
          "order is not a permutation of the ground set");
    }
    seen[e] = 1;
  }
  return order;
}

namespace {

std::unique_ptr<MatroidOracle> gen_matroid(MatroidKind kind, int elements,
                                           int rank_limit, Rng& rng) {
  switch (kind) {
    case MatroidKind::kUniform:
      return std::make_unique<UniformMatroid>(
          elements, rng.next_int(1, std::max(1, rank_limit)));
    case MatroidKind::kPartition: {
      // Capacities 1..2 per block, total capacity within the rank limit.
      std::vector<int> capacities;
      int total = 0;
      while (total < rank_limit) {
        int cap = std::min(rank_limit - total, rng.next_int(1, 2));
        capacities.push_back(cap);
        total += cap;
        if (static_cast<int>(capacities.size()) >= elements) break;
        if (rng.next_unit() < 0.25 && capacities.size() >= 2) break;
      }
      std::vector<int> blocks(elements);
      for (int e = 0; e < elements; ++e) {
        blocks[e] = rng.next_int(0, static_cast<int>(capacities.size()) - 1);
      }
      return std::make_unique<PartitionMatroid>(std::move(blocks),
                                                std::move(capacities));
    }
    case MatroidKind::kGraphic: {
      // Vertex count rank_limit + 1 keeps the rank within the limit.
      int vertices = std::max(2, rank_limit + 1);
      std::vector<std::pair<int, int>> edges(elements);
      for (int e = 0; e < elements; ++e) {
        int a = rng.next_int(0, vertices - 1);
        int b = rng.next_int(0, vertices - 2);
        if (b >= a) ++b;
        edges[e] = {a, b};
      }
      return std::make_unique<GraphicMatroid>(vertices, std::move(edges));
    }
  }
  throw std::invalid_argument("unknown matroid kind");
}

}  // namespace

Instance gen_coverage_instance(const CoverageGenParams& params,
                               MatroidKind matroid_kind, int rank_limit,
                               std::uint64_t seed) {
  if (params.elements < 1 || params.universe < 1 || params.density <= 0.0 ||
      params.density > 1.0) {
    throw std::invalid_argument("bad coverage generator parameters");
  }
  Rng rng(mix64(seed, 0xc0e0u));
  std::vector<std::vector<int>> covers(params.elements);
  for (int e = 0; e < params.elements; ++e) {
    while (covers[e].empty()) {
      for (int v = 0; v < params.universe; ++v) {
        if (rng.next_unit() < params.density) covers[e].push_back(v);
      }
    }
  }
  std::vector<double> weights(params.universe);
  for (double& w : weights) w = 0.25 + rng.next_unit();

  Instance instance;
  instance.name = "coverage-" + std::to_string(seed);
  instance.seed = seed;
  instance.objective = std::make_unique<CoverageFunction>(
      params.universe, std::move(covers), std::move(weights));
  instance.matroid = gen_matroid(matroid_kind, params.elements, rank_limit, rng);
  return instance;
}

Instance gen_cut_instance(int elements, double density,
                          MatroidKind matroid_kind, int rank_limit,
                          std::uint64_t seed) {
  if (elements < 2 || density <= 0.0 || density > 1.0) {
    throw std::invalid_argument("bad cut generator parameters");
  }
  Rng rng(mix64(seed, 0xc117u));
  std::vector<CutFunction::Edge> edges;
  for (int a = 0; a < elements; ++a) {
    for (int b = a + 1; b < elements; ++b) {
      if (rng.next_unit() < density) {
        edges.push_back({a, b, 0.25 + rng.next_unit()});
      }
    }
  }
  if (edges.empty()) {
    edges.push_back({0, 1, 0.25 + rng.next_unit()});
  }

  Instance instance;
  instance.name = "cut-" + std::to_string(seed);
  instance.seed = seed;
  instance.objective = std::make_unique<CutFunction>(elements, std::move(edges));
  instance.matroid = gen_matroid(matroid_kind, elements, rank_limit, rng);
  return instance;
}

namespace {

std::vector<std::pair<int, int>> layer_graph_from_token(const std::string& token,
                                                        Rng& rng) {
  auto bad = [&] {
    return std::invalid_argument("bad graph token \"" + token +
                                 "\"; expected path:K, matching:K, "
                                 "complete:AxB or random:AxB:D");
  };
  std::size_t colon = token.find(':');
  if (colon == std::string::npos) throw bad();
  std::string kind = token.substr(0, colon);
  std::string rest = token.substr(colon + 1);
  std::vector<std::pair<int, int>> edges;
  if (kind == "path") {
    int k = std::stoi(rest);
    if (k < 1) throw bad();
    // Bipartite path with k edges: L0-R0, L1-R0, L1-R1, ...
    for (int i = 0; i < k; ++i) edges.emplace_back((i + 1) / 2, i / 2);
    return edges;
  }
  if (kind == "matching") {
    int k = std::stoi(rest);
    if (k < 1) throw bad();
    for (int i = 0; i < k; ++i) edges.emplace_back(i, i);
    return edges;
  }
  if (kind == "complete" || kind == "random") {
    std::size_t x = rest.find('x');
    if (x == std::string::npos) throw bad();
    int a = std::stoi(rest.substr(0, x));
    std::string tail = rest.substr(x + 1);
    double density = 1.0;
    if (kind == "random") {
      std::size_t colon2 = tail.find(':');
      if (colon2 == std::string::npos) throw bad();
      density = std::stod(tail.substr(colon2 + 1));
      tail = tail.substr(0, colon2);
    }
    int b = std::stoi(tail);
    if (a < 1 || b < 1 || density <= 0.0 || density > 1.0) throw bad();
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < b; ++j) {
        if (kind == "complete" || rng.next_unit() < density) {
          edges.emplace_back(i, j);
        }
      }
    }
    if (edges.empty()) edges.emplace_back(0, 0);
    return edges;
  }
  throw bad();
}

}  // namespace

Instance gen_hardness_instance(int layer_count, int copies,
                               const std::string& graph_spec, double eps,
                               std::uint64_t seed) {
  if (layer_count < 1 || copies < 1) {
    throw std::invalid_argument("bad hardness generator parameters");
  }
  Rng rng(mix64(seed, 0xa2d0u));
  std::vector<std::string> tokens;
  std::string spec = graph_spec.empty() ? "path:3" : graph_spec;
  std::size_t pos = 0;
  while (pos != std::string::npos) {
    std::size_t comma = spec.find(',', pos);
    tokens.push_back(spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    pos = comma == std::string::npos ? comma : comma + 1;
  }

  LayeredInstance layered;
  layered.copies = copies;
  for (int i = 0; i < layer_count; ++i) {
    LayeredInstance::Layer layer;
    const std::string& token =
        tokens[std::min<std::size_t>(i, tokens.size() - 1)];
    layer.edges = layer_graph_from_token(token, rng);
    layer.matching_bound = matching_bound_power(layer.edges, eps);
    layer.secret_copy = rng.next_int(1, copies);
    layered.layers.push_back(std::move(layer));
  }

  Instance instance;
  instance.name = "hardness-" + std::to_string(seed);
  instance.seed = seed;
  int ground = layered.ground_size();

  // One block per underlying edge with capacity 1: solutions pick at most
  // one copy of each edge.
  std::vector<int> blocks(ground);
  int block_count = 0;
  {
    int offset = 0;
    for (const auto& layer : layered.layers) {
      for (std::size_t e = 0; e < layer.edges.size(); ++e) {
        for (int c = 0; c < copies; ++c) blocks[offset++] = block_count;
        ++block_count;
      }
    }
  }
  instance.matroid = std::make_unique<PartitionMatroid>(
      std::move(blocks), std::vector<int>(block_count, 1));
  instance.objective =
      std::make_unique<LayeredFamilyFunction>(std::move(layered));
  return instance;
}

BruteForceResult brute_force_opt(const MatroidOracle& m,
                                 const SubmodularOracle& f, int cap) {
  if (m.ground_size() > cap) {
    throw std::runtime_error("brute_force_opt: ground set exceeds cap " +
                             std::to_string(cap));
  }
  ElementSet universe(m.ground_size());
  for (int e = 0; e < m.ground_size(); ++e) universe[e] = e;
  auto [set, value] = argmax_independent(
      m, universe, [&](const ElementSet& s) { return f.value(s); });
  return {set, value};
}

BruteForceResult brute_force_best_base(const MatroidOracle& m,
                                       const SubmodularOracle& f, int cap) {
  if (m.ground_size() > cap) {
    throw std::runtime_error("brute_force_best_base: ground set exceeds cap " +
                             std::to_string(cap));
  }
  ElementSet best;
  double best_value = 0.0;
  bool found = false;
  ElementSet current;
  // Depth-first over independent sets in id order; only full-rank leaves
  // get scored.
  auto visit = [&](auto&& self, ElementId next) -> void {
    if (static_cast<int>(current.size()) == m.rank_total()) {
      double v = f.value(current);
      if (!found || v > best_value) {
        found = true;
        best_value = v;
        best = set_sorted(current);
      }
      return;
    }
    for (ElementId e = next; e < m.ground_size(); ++e) {
      current.push_back(e);
      if (m.is_independent(current)) self(self, e + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);
  SUBMAX_CHECK(found, "matroid has no base");
  return {best, best_value};
}

ElementSet offline_greedy(const MatroidOracle& m, const SubmodularOracle& f) {
  ElementSet solution;
  while (true) {
    ElementId best = -1;
    double best_gain = 0.0;
    for (ElementId e = 0; e < m.ground_size(); ++e) {
      if (set_contains(solution, e)) continue;
      if (!m.is_independent(set_plus(solution, e))) continue;
      double gain = marginal(f, e, solution);
      if (best < 0 || gain > best_gain) {
        best = e;
        best_gain = gain;
      }
    }
    if (best < 0 || best_gain <= 0.0) break;
    solution.push_back(best);
  }
  return set_sorted(solution);
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.15g", v);
  if (std::stod(buffer) != v) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  }
  return buffer;
}

namespace {

std::string echo_config(const RunRequest& r) {
  std::ostringstream oss;
  if (r.algorithm == "single-pass") {
    oss << "epsilon=" << format_double(r.epsilon) << " mode="
        << (r.mode == ObjectiveMode::kMonotone ? "monotone" : "nonmonotone");
  } else if (r.algorithm == "multipass") {
    oss << "delta=" << format_double(r.delta);
  } else if (r.algorithm == "dscg") {
    oss << "epsilon=" << format_double(r.epsilon);
  } else if (r.algorithm == "two-player") {
    oss << "h=" << r.two_player_h;
  }
  if (r.algorithm == "single-pass" || r.algorithm == "dscg") {
    if (r.exact_oracle) {
      oss << " oracle=exact";
    } else {
      oss << " oracle=mc(" << r.samples << ")";
    }
    oss << " round_trials=" << r.round_trials;
  }
  return oss.str();
}

}  // namespace

RunReport run_algorithm(const Instance& instance, const OrderSpec& order,
                        const RunRequest& request) {
  RunReport report;
  report.algorithm = request.algorithm;
  report.instance_name = instance.name;
  report.order_desc = order.source;
  report.seed = request.seed;
  report.config_echo = echo_config(request);

  const MatroidOracle& m = *instance.matroid;
  const SubmodularOracle& f = *instance.objective;
  auto start_time = std::chrono::steady_clock::now();
  try {
    f.reset_value_calls();
    m.reset_independence_calls();

    auto make_evaluator = [&]() {
      if (request.exact_oracle) {
        const CoverageFunction* coverage = instance.coverage();
        if (coverage == nullptr) {
          throw std::invalid_argument(
              "--exact-oracle requires a coverage objective");
        }
        return MultilinearEvaluator::exact(*coverage);
      }
      return MultilinearEvaluator::sampled(
          f, EstimatorConfig{request.samples, mix64(request.seed, 0xe57u)});
    };

    if (request.algorithm == "single-pass") {
      auto cfg = SinglePassConfig::make(request.epsilon, request.mode);
      SinglePassOutput out =
          run_single_pass(cfg, m, f, make_evaluator(), resolve_order(order, instance),
                          request.round_trials, mix64(request.seed, 0x10adu));
      report.solution = out.solution;
      report.max_stored = out.report.max_stored;
      report.passes = 1;
    } else if (request.algorithm == "multipass") {
      MultiPassResult out = multi_pass_local_search(
          m, f, request.delta, resolve_order(order, instance));
      report.solution = set_sorted(out.solution);
      report.passes = out.passes;
      for (const SwapPassRecord& rec : out.trace) {
        report.per_pass_values.push_back(rec.result_value);
      }
      report.max_stored = 2 * static_cast<std::size_t>(m.rank_total());
    } else if (request.algorithm == "dscg") {
      DscgConfig cfg;
      cfg.epsilon = request.epsilon;
      cfg.round_trials = request.round_trials;
      cfg.seed = mix64(request.seed, 0xd5c6u);
      DscgResult out =
          dscg(cfg, m, f, make_evaluator(), resolve_order(order, instance));
      report.solution = set_sorted(out.solution);
      report.passes = out.total_passes;
      report.max_stored =
          static_cast<std::size_t>(cfg.rounds()) * m.rank_total();
    } else if (request.algorithm == "two-player") {
      const CoverageFunction* coverage = instance.coverage();
      if (coverage == nullptr) {
        throw std::invalid_argument("two-player requires a coverage objective");
      }
      TwoPlayerInstance tp;
      tp.matroid = &m;
      tp.objective = coverage;
      tp.steps = request.two_player_h;
      if (!request.alice_split.empty()) {
        tp.alice_elements = request.alice_split;
      } else {
        // Random half split derived from the seed.
        std::vector<ElementId> ids(instance.ground_size());
        for (int i = 0; i < instance.ground_size(); ++i) ids[i] = i;
        Rng rng(mix64(request.seed, 0x59117u));
        rng.shuffle(ids);
        tp.alice_elements.assign(ids.begin(), ids.begin() + ids.size() / 2);
      }
      for (ElementId e = 0; e < instance.ground_size(); ++e) {
        if (!set_contains(tp.alice_elements, e)) {
          tp.bob_elements.push_back(e);
        }
      }
      AliceMessage msg = alice(tp);
      report.solution = set_sorted(bob(msg, tp));
      report.max_stored = msg.sent.size();
      report.passes = 1;
    } else {
      throw std::invalid_argument("unknown algorithm \"" + request.algorithm +
                                  "\"");
    }

    // Re-validate the emitted solution from scratch.
    SUBMAX_CHECK(m.is_independent(report.solution),
                 "reported solution is not independent");
    report.value = f.value(report.solution);

    report.value_oracle_calls = f.value_calls();
    report.independence_calls = m.independence_calls();

    if (instance.ground_size() <= request.reference_cap) {
      BruteForceResult opt = brute_force_opt(m, f, request.reference_cap);
      report.reference = opt.value;
      report.ratio = opt.value > 1e-12 ? report.value / opt.value : 1.0;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start_time)
          .count();
  return report;
}

std::vector<PlanEntry> load_plan(const std::string& path) {
  ordered_json j = read_json_file(path);
  require_keys(j, "plan", {"schema", "runs"});
  require_schema(j, "plan");
  // Relative instance/order paths resolve against the plan's directory.
  std::string base;
  if (std::size_t slash = path.find_last_of('/'); slash != std::string::npos) {
    base = path.substr(0, slash + 1);
  }
  auto resolve = [&](const std::string& p) {
    return (p.empty() || p.front() == '/') ? p : base + p;
  };
  std::vector<PlanEntry> plan;
  for (const auto& rj : j.at("runs")) {
    require_keys(rj, "run", {"instance", "algorithm"},
                 {"order", "seed", "config"});
    PlanEntry entry;
    entry.instance_path = resolve(rj.at("instance").get<std::string>());
    if (rj.contains("order")) {
      entry.order_path = resolve(rj.at("order").get<std::string>());
    }
    entry.request.algorithm = rj.at("algorithm").get<std::string>();
    if (rj.contains("seed")) {
      entry.request.seed = rj.at("seed").get<std::uint64_t>();
    }
    if (rj.contains("config")) {
      const auto& cj = rj.at("config");
      require_keys(cj, "config", {},
                   {"epsilon", "delta", "mode", "exact_oracle", "samples",
                    "round_trials", "h", "reference_cap"});
      if (cj.contains("epsilon")) entry.request.epsilon = cj["epsilon"].get<double>();
      if (cj.contains("delta")) entry.request.delta = cj["delta"].get<double>();
      if (cj.contains("mode")) {
        std::string mode = cj["mode"].get<std::string>();
        if (mode == "monotone") {
          entry.request.mode = ObjectiveMode::kMonotone;
        } else if (mode == "nonmonotone") {
          entry.request.mode = ObjectiveMode::kNonMonotone;
        } else {
          throw std::invalid_argument("config: unknown mode \"" + mode + "\"");
        }
      }
      if (cj.contains("exact_oracle")) {
        entry.request.exact_oracle = cj["exact_oracle"].get<bool>();
      }
      if (cj.contains("samples")) {
        entry.request.samples = cj["samples"].get<std::int64_t>();
      }
      if (cj.contains("round_trials")) {
        entry.request.round_trials = cj["round_trials"].get<int>();
      }
      if (cj.contains("h")) entry.request.two_player_h = cj["h"].get<int>();
      if (cj.contains("reference_cap")) {
        entry.request.reference_cap = cj["reference_cap"].get<int>();
      }
    }
    plan.push_back(std::move(entry));
  }
  return plan;
}

std::vector<RunReport> run_experiment(const std::vector<PlanEntry>& plan) {
  std::vector<RunReport> reports;
  reports.reserve(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlanEntry& entry = plan[i];
    RunReport report;
    try {
      Instance instance = load_instance(entry.instance_path);
      OrderSpec order = entry.order_path.empty()
                            ? OrderSpec::random(entry.request.seed)
                            : load_order(entry.order_path);
      report = run_algorithm(instance, order, entry.request);
    } catch (const std::exception& e) {
      report.algorithm = entry.request.algorithm;
      report.instance_name = entry.instance_path;
      report.error = e.what();
    }
    report.plan_index = static_cast<int>(i);
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

std::string csv_escape(const std::string& s) {
  bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string set_to_string(const ElementSet& s) {
  std::ostringstream oss;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) oss << ' ';
    oss << s[i];
  }
  return oss.str();
}

}  // namespace

void write_csv(const std::vector<RunReport>& reports, std::ostream& out,
               bool include_timings) {
  out << "plan_index,algorithm,instance,order,seed,config,solution,value,"
         "reference,ratio,max_stored,passes,value_oracle_calls,"
         "independence_calls,error";
  if (include_timings) out << ",elapsed_ms";
  out << "\n";
  for (const RunReport& r : reports) {
    out << r.plan_index << ',' << csv_escape(r.algorithm) << ','
        << csv_escape(r.instance_name) << ',' << csv_escape(r.order_desc)
        << ',' << r.seed << ',' << csv_escape(r.config_echo) << ','
        << csv_escape(set_to_string(r.solution)) << ','
        << format_double(r.value) << ','
        << (r.reference ? format_double(*r.reference) : "") << ','
        << (r.ratio ? format_double(*r.ratio) : "") << ',' << r.max_stored
        << ',' << r.passes << ',' << r.value_oracle_calls << ','
        << r.independence_calls << ',' << csv_escape(r.error);
    if (include_timings) out << ',' << format_double(r.elapsed_ms);
    out << "\n";
  }
}

std::string report_to_json(const RunReport& report) {
  ordered_json j;
  j["algorithm"] = report.algorithm;
  j["instance"] = report.instance_name;
  j["order"] = report.order_desc;
  j["seed"] = report.seed;
  j["config"] = report.config_echo;
  j["solution"] = report.solution;
  j["value"] = report.value;
  if (report.reference) j["reference"] = *report.reference;
  if (report.ratio) j["ratio_vs_reference"] = *report.ratio;
  j["max_stored"] = report.max_stored;
  j["passes"] = report.passes;
  if (!report.per_pass_values.empty()) {
    j["per_pass_values"] = report.per_pass_values;
  }
  j["oracle_calls"] = report.value_oracle_calls;
  j["independence_calls"] = report.independence_calls;
  j["elapsed_ms"] = report.elapsed_ms;
  if (!report.error.empty()) j["error"] = report.error;
  return j.dump(2) + "\n";
}

}  // namespace submax

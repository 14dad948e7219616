// Copyright 2026 The coseed Authors.
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

#include "coseed/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "coseed/rng.hpp"

namespace coseed {

BaseGraph barabasi_albert(std::size_t node_count, std::size_t attach, std::uint64_t rng_seed) {
  if (attach == 0) throw DomainError("attach must be positive");
  Engine engine = make_engine(rng_seed, 0);
  std::vector<Arc> edges;
  // Every endpoint occurrence; sampling uniformly from it is degree-proportional.
  std::vector<NodeId> endpoints;
  const std::size_t core = std::min(node_count, attach + 1);
  for (std::size_t u = 0; u < core; ++u) {
    for (std::size_t v = u + 1; v < core; ++v) {
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      endpoints.push_back(static_cast<NodeId>(u));
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  std::vector<NodeId> chosen;
  for (std::size_t u = core; u < node_count; ++u) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < attach) {
      NodeId v = endpoints[pick(engine)];
      if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
    }
    for (NodeId v : chosen) {
      edges.push_back({static_cast<NodeId>(u), v});
      endpoints.push_back(static_cast<NodeId>(u));
      endpoints.push_back(v);
    }
  }
  return BaseGraph(node_count, std::move(edges), false);
}

BaseGraph erdos_renyi(std::size_t node_count, double average_degree, bool directed,
                      std::uint64_t rng_seed) {
  if (node_count < 2) return BaseGraph(node_count, {}, directed);
  const double p = std::clamp(average_degree / static_cast<double>(node_count - 1), 0.0, 1.0);
  Engine engine = make_engine(rng_seed, 0);
  std::vector<Arc> arcs;
  for (std::size_t u = 0; u < node_count; ++u) {
    for (std::size_t v = directed ? 0 : u + 1; v < node_count; ++v) {
      if (u == v) continue;
      if (uniform01(engine) < p) arcs.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return BaseGraph(node_count, std::move(arcs), directed);
}

BaseGraph random_regular(std::size_t node_count, std::size_t degree, std::uint64_t rng_seed) {
  if ((node_count * degree) % 2 != 0) throw DomainError("n * d must be even");
  if (degree >= node_count && node_count > 0) throw DomainError("degree must be below n");
  Engine engine = make_engine(rng_seed, 0);
  std::vector<NodeId> stubs;
  for (std::size_t v = 0; v < node_count; ++v) {
    for (std::size_t k = 0; k < degree; ++k) stubs.push_back(static_cast<NodeId>(v));
  }
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), engine);
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<Arc> edges;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      NodeId a = std::min(stubs[i], stubs[i + 1]);
      NodeId b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || !seen.insert({a, b}).second) {
        simple = false;
        break;
      }
      edges.push_back({a, b});
    }
    if (simple) return BaseGraph(node_count, std::move(edges), false);
  }
  throw CapacityError("could not draw a simple regular graph");
}

BaseGraph star_graph(std::size_t leaves, bool directed) {
  std::vector<Arc> arcs;
  for (std::size_t l = 1; l <= leaves; ++l) arcs.push_back({0, static_cast<NodeId>(l)});
  return BaseGraph(leaves + 1, std::move(arcs), directed);
}

BaseGraph path_graph(std::size_t node_count) {
  std::vector<Arc> arcs;
  for (std::size_t v = 1; v < node_count; ++v) {
    arcs.push_back({static_cast<NodeId>(v - 1), static_cast<NodeId>(v)});
  }
  return BaseGraph(node_count, std::move(arcs), false);
}

BaseGraph cycle_graph(std::size_t node_count) {
  std::vector<Arc> arcs;
  for (std::size_t v = 0; v < node_count; ++v) {
    arcs.push_back({static_cast<NodeId>(v), static_cast<NodeId>((v + 1) % node_count)});
  }
  return BaseGraph(node_count, std::move(arcs), false);
}

}  // namespace coseed

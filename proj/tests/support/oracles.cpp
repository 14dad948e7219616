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

#include "support/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace coseed::testing {
namespace {

std::size_t reach_count(std::size_t n, const std::vector<std::vector<NodeId>>& adj,
                        std::span<const NodeId> seeds) {
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack;
  for (NodeId s : seeds) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  std::size_t count = stack.size();
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

void recurse(const std::vector<WeightedArc>& arcs, std::size_t i, double weight, std::size_t n,
             std::vector<std::vector<NodeId>>& adj, std::span<const NodeId> seeds, double& total) {
  if (i == arcs.size()) {
    total += weight * static_cast<double>(reach_count(n, adj, seeds));
    return;
  }
  const auto& a = arcs[i];
  adj[a.from].push_back(a.to);
  recurse(arcs, i + 1, weight * a.prob, n, adj, seeds, total);
  adj[a.from].pop_back();
  if (a.prob < 1.0) recurse(arcs, i + 1, weight * (1.0 - a.prob), n, adj, seeds, total);
}

}  // namespace

double enumerate_influence(const InfluenceNetwork& net, std::span<const NodeId> seeds) {
  if (net.arc_count() > 22) throw std::invalid_argument("too many arcs to enumerate");
  std::vector<std::vector<NodeId>> adj(net.node_count());
  double total = 0.0;
  recurse(net.arcs(), 0, 1.0, net.node_count(), adj, seeds, total);
  return total;
}

InfluenceNetwork random_network(std::size_t nodes, std::size_t arcs, Engine& engine, double p_lo,
                                double p_hi) {
  std::vector<std::pair<NodeId, NodeId>> all;
  for (NodeId u = 0; u < nodes; ++u) {
    for (NodeId v = 0; v < nodes; ++v) {
      if (u != v) all.emplace_back(u, v);
    }
  }
  std::shuffle(all.begin(), all.end(), engine);
  all.resize(std::min(arcs, all.size()));
  std::uniform_real_distribution<double> prob(p_lo, p_hi);
  std::vector<WeightedArc> out;
  for (auto [u, v] : all) out.push_back({u, v, prob(engine)});
  return InfluenceNetwork(nodes, std::move(out));
}

bool feasible_by_counting(const ConstraintSystem& constraints, std::size_t node_count,
                          std::size_t advertiser_count, std::span<const GroundElement> elements) {
  if (elements.size() > constraints.total_cap) return false;
  std::vector<std::size_t> per_node(node_count, 0);
  std::vector<std::size_t> per_advertiser(advertiser_count, 0);
  std::set<std::pair<NodeId, AdvertiserId>> distinct;
  for (const auto& e : elements) {
    if (!distinct.insert({e.node, e.advertiser}).second) return false;
    if (++per_node[e.node] > constraints.exposure_bounds[e.node]) return false;
    ++per_advertiser[e.advertiser];
    if (constraints.advertiser_caps &&
        per_advertiser[e.advertiser] > (*constraints.advertiser_caps)[e.advertiser]) {
      return false;
    }
  }
  return true;
}

Allocation to_allocation(std::size_t node_count, std::size_t advertiser_count,
                         std::span<const GroundElement> elements) {
  Allocation alloc(node_count, advertiser_count);
  for (const auto& e : elements) alloc.insert(e);
  return alloc;
}

void for_each_feasible(const ConstraintSystem& constraints, std::size_t node_count,
                       std::size_t advertiser_count,
                       const std::function<void(const std::vector<GroundElement>&)>& fn) {
  const std::size_t ground = node_count * advertiser_count;
  if (ground > 20) throw std::invalid_argument("ground set too large to enumerate");
  std::vector<GroundElement> set;
  for (std::uint32_t mask = 0; mask < (1u << ground); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > constraints.total_cap) continue;
    set.clear();
    for (std::size_t i = 0; i < ground; ++i) {
      if (mask & (1u << i)) {
        set.push_back({static_cast<NodeId>(i / advertiser_count),
                       static_cast<AdvertiserId>(i % advertiser_count)});
      }
    }
    if (feasible_by_counting(constraints, node_count, advertiser_count, set)) fn(set);
  }
}

double oracle_value(const ProblemInstance& instance, std::span<const GroundElement> elements,
                    double beta) {
  double total = 0.0;
  for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
    std::vector<NodeId> seeds;
    for (const auto& e : elements) {
      if (e.advertiser == j) seeds.push_back(e.node);
    }
    const auto& prof = instance.profiles[j];
    const double reach = seeds.empty() ? 0.0 : enumerate_influence(instance.networks[j], seeds);
    const double raw = prof.price * reach;
    total += std::min(prof.budget, raw) - beta * std::max(0.0, raw - prof.budget);
  }
  return total;
}

BruteForce brute_force_optimum(const ProblemInstance& instance, double beta) {
  BruteForce out;
  bool first = true;
  for_each_feasible(instance.constraints, instance.node_count(), instance.advertiser_count(),
                    [&](const std::vector<GroundElement>& set) {
                      ++out.feasible_sets;
                      const double v = oracle_value(instance, set, beta);
                      if (first || v > out.best) {
                        out.best = v;
                        out.argbest = set;
                        first = false;
                      }
                    });
  return out;
}

ProblemInstance random_small_instance(const SmallInstanceSpec& spec, Engine& engine) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine);
  };
  const std::size_t n = pick(2, spec.max_nodes);
  const std::size_t m = pick(1, spec.max_advertisers);
  ProblemInstance instance;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t max_arcs = std::min(spec.max_arcs, n * (n - 1));
    instance.networks.push_back(random_network(n, pick(0, max_arcs), engine));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    AdvertiserProfile p;
    p.price = 0.5 + unit(engine);
    p.budget = spec.budgets ? 0.5 + 3.0 * unit(engine) : kUnlimitedBudget;
    instance.profiles.push_back(p);
  }
  ConstraintSystem c;
  for (std::size_t v = 0; v < n; ++v) {
    c.exposure_bounds.push_back(static_cast<std::uint32_t>(pick(1, spec.max_exposure)));
  }
  c.total_cap = pick(1, spec.max_total);
  if (spec.caps) {
    std::vector<std::uint32_t> caps;
    for (std::size_t j = 0; j < m; ++j) caps.push_back(static_cast<std::uint32_t>(pick(1, 2)));
    c.advertiser_caps = caps;
  }
  instance.constraints = std::move(c);
  instance.validate();
  return instance;
}

}  // namespace coseed::testing

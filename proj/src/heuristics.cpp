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

#include "coseed/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coseed/simd.hpp"

namespace coseed {

Allocation round_robin_assign(const ProblemInstance& instance, std::span<const NodeId> order) {
  instance.validate();
  const std::size_t m = instance.advertiser_count();
  const auto& cons = instance.constraints;
  Allocation alloc(instance.node_count(), m);
  std::vector<std::size_t> used(m, 0);
  auto has_room = [&](std::size_t j) {
    return !cons.advertiser_caps || used[j] < (*cons.advertiser_caps)[j];
  };
  std::size_t pointer = 0;
  for (NodeId v : order) {
    if (alloc.size() >= cons.total_cap) break;
    const std::size_t want = std::min<std::size_t>(cons.exposure_bounds[v], m);
    std::size_t given = 0;
    // One pass over the cycle at most, so a node never gets an advertiser twice.
    for (std::size_t tries = 0; tries < m && given < want && alloc.size() < cons.total_cap;
         ++tries) {
      const std::size_t j = pointer;
      pointer = (pointer + 1) % m;
      if (!has_room(j)) continue;
      alloc.insert({v, static_cast<AdvertiserId>(j)});
      ++used[j];
      ++given;
    }
    bool any_room = false;
    for (std::size_t j = 0; j < m && !any_room; ++j) any_room = has_room(j);
    if (!any_room) break;
  }
  return alloc;
}

namespace {

std::vector<NodeId> rank_by(const std::vector<double>& score) {
  std::vector<NodeId> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return score[a] > score[b]; });
  return order;
}

}  // namespace

Allocation max_degree_allocate(const ProblemInstance& instance) {
  const BaseGraph g = instance.structure();
  std::vector<double> degree(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    degree[v] = static_cast<double>(g.degree(static_cast<NodeId>(v)));
  }
  const auto order = rank_by(degree);
  return round_robin_assign(instance, order);
}

Centrality eigenvector_centrality(const BaseGraph& graph, double tolerance,
                                  std::size_t max_iterations) {
  const std::size_t n = graph.node_count();
  Centrality c;
  if (n == 0) {
    c.converged = true;
    return c;
  }
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  while (c.iterations < max_iterations) {
    ++c.iterations;
    for (std::size_t u = 0; u < n; ++u) {
      double acc = x[u];
      for (NodeId w : graph.out_neighbors(static_cast<NodeId>(u))) acc += x[w];
      next[u] = acc;
    }
    const double norm = std::sqrt(simd::dot(next, next));
    if (norm == 0.0) break;
    simd::scale(1.0 / norm, next);
    const double change = simd::max_abs_diff(next, x);
    const double peak = next[simd::argmax(next)];
    x.swap(next);
    if (change <= tolerance * peak) {
      c.converged = true;
      break;
    }
  }
  c.score = std::move(x);
  return c;
}

Allocation eigen_centrality_allocate(const ProblemInstance& instance,
                                     std::vector<std::string>* warnings) {
  const Centrality c = eigenvector_centrality(instance.structure());
  if (!c.converged && warnings != nullptr) {
    warnings->push_back("eigenvector centrality did not converge in " +
                        std::to_string(c.iterations) + " iterations; using the last iterate");
  }
  const auto order = rank_by(c.score);
  return round_robin_assign(instance, order);
}

}  // namespace coseed

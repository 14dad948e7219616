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

// Test-side reference implementations. None of these call into the library's
// own evaluation paths; they only share its data types.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/graph.hpp"
#include "coseed/payoff.hpp"
#include "coseed/rng.hpp"

namespace coseed::testing {

// Expected number of activated nodes, by recursing over keep/drop decisions
// for every arc and running a plain DFS at each leaf.
double enumerate_influence(const InfluenceNetwork& net, std::span<const NodeId> seeds);

// Directed network with `arcs` distinct random arcs and probabilities drawn
// from [p_lo, p_hi].
InfluenceNetwork random_network(std::size_t nodes, std::size_t arcs, Engine& engine,
                                double p_lo = 0.05, double p_hi = 0.95);

// Feasibility by direct counting over an element list.
bool feasible_by_counting(const ConstraintSystem& constraints, std::size_t node_count,
                          std::size_t advertiser_count, std::span<const GroundElement> elements);

Allocation to_allocation(std::size_t node_count, std::size_t advertiser_count,
                         std::span<const GroundElement> elements);

// Every feasible subset of the n * m ground set (n * m <= 20).
void for_each_feasible(const ConstraintSystem& constraints, std::size_t node_count,
                       std::size_t advertiser_count,
                       const std::function<void(const std::vector<GroundElement>&)>& fn);

// Sum_j min(B_j, c_j * reach_j) with reach from enumerate_influence, minus
// beta times the total overshoot.
double oracle_value(const ProblemInstance& instance, std::span<const GroundElement> elements,
                    double beta = 0.0);

struct BruteForce {
  double best = 0.0;
  std::vector<GroundElement> argbest;
  std::size_t feasible_sets = 0;
};

BruteForce brute_force_optimum(const ProblemInstance& instance, double beta = 0.0);

struct SmallInstanceSpec {
  std::size_t max_nodes = 6;
  std::size_t max_advertisers = 2;
  std::size_t max_total = 3;
  std::size_t max_arcs = 8;
  bool budgets = true;
  bool caps = false;
  std::uint32_t max_exposure = 2;
};

ProblemInstance random_small_instance(const SmallInstanceSpec& spec, Engine& engine);

}  // namespace coseed::testing

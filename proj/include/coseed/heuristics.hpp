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

// Probability-blind baselines: rank nodes by a structural score and deal them
// out to advertisers round robin.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/payoff.hpp"

namespace coseed {

// Walks `order` and gives each node to the next min(r_v, m) advertisers of a
// cyclic pointer shared across nodes, skipping advertisers whose seed cap is
// used up. Stops after K assignments.
Allocation round_robin_assign(const ProblemInstance& instance, std::span<const NodeId> order);

// Degree descending (total degree on directed graphs), ties by node index.
Allocation max_degree_allocate(const ProblemInstance& instance);

struct Centrality {
  std::vector<double> score;  // unit L2 norm, non-negative
  std::size_t iterations = 0;
  bool converged = false;
};

// Leading eigenvector of the out-link adjacency matrix A by power iteration on
// A + I, which has the same eigenvectors but no oscillation on bipartite
// graphs. Stops at a relative max-norm change below `tolerance` or after
// `max_iterations`.
Centrality eigenvector_centrality(const BaseGraph& graph, double tolerance = 1e-8,
                                  std::size_t max_iterations = 1000);

// Centrality descending, ties by node index. A non-converged iteration is
// used as is and reported through `warnings`.
Allocation eigen_centrality_allocate(const ProblemInstance& instance,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace coseed

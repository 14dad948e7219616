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

// Greedy seed allocation under the exposure and seed-cap constraints, its
// penalty-aware variant, and local search over both matroids.
//
// Ties between equal gains go to the smaller advertiser index, then to the
// smaller node index.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/payoff.hpp"

namespace coseed {

struct GreedyStep {
  std::size_t round = 0;
  GroundElement element;
  double gain = 0.0;
  double objective = 0.0;  // after the addition
};

struct GreedyResult {
  Allocation allocation;
  double objective = 0.0;
  std::vector<GreedyStep> trace;
  std::size_t evaluations = 0;  // marginal gain queries
};

struct GreedyOptions {
  // Re-evaluate stale heap entries on demand. Gains only shrink as the
  // allocation grows, so the first fresh entry on top is the true maximum.
  bool lazy = true;
};

// Adds the feasible element of largest revenue gain until the best gain is
// not positive or K elements are chosen. At least 1/2 of the optimum with only
// the exposure constraints, 1/3 with seed caps as well.
GreedyResult greedy_allocate(const ProblemInstance& instance, const ReachEstimator& estimator,
                             const GreedyOptions& options = {});

struct PenaltyGreedyResult : GreedyResult {
  // No advertiser can exceed its budget from a single seed.
  bool precondition_holds = true;
  double guarantee_factor = 0.0;  // (1 + beta) / (2 + 3 beta); void without the precondition
  std::vector<std::string> warnings;
};

// Greedy on the penalty objective. Every round scores all feasible elements;
// stops before any element whose gain is not positive.
PenaltyGreedyResult penalty_greedy_allocate(const ProblemInstance& instance,
                                            const ReachEstimator& estimator, double beta);

double penalty_guarantee_factor(double beta);

struct LocalSearchResult {
  Allocation allocation;
  double objective = 0.0;
  double start_objective = 0.0;  // greedy
  std::size_t moves = 0;
};

// Starts from greedy and applies improving moves (add one element, or add one
// while dropping up to two) that raise revenue by a factor of at least
// 1 + epsilon / |ground|. ConfigError without seed caps.
LocalSearchResult local_search_two_matroids(const ProblemInstance& instance,
                                            const ReachEstimator& estimator, double epsilon);

// round,node,advertiser,gain,objective
void write_trace_csv(std::ostream& out, const std::vector<GreedyStep>& trace,
                     const BaseGraph* ids = nullptr);

}  // namespace coseed

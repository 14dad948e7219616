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

// Randomized rounding of fractional allocations.
//
// Both roundings select (v, j) with probability exactly x_{v,j}, round every
// node's exposure count to an integer adjacent to its fractional value, and
// likewise the total seed count. dependent_round also does so for every
// advertiser's seed count. Values within 1e-9 of 0 or 1 are snapped first.
// An integral input is returned as is without drawing from the engine.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/lp.hpp"
#include "coseed/rng.hpp"

namespace coseed {

inline constexpr double kSnapTolerance = 1e-9;

// Alternating path and cycle rounding on the node/advertiser bipartite graph.
// A slack vertex tied to every advertiser makes each advertiser degree
// integral, which carries the total count through the same rounding.
Allocation dependent_round(const FractionalAllocation& x, Engine& engine);
Allocation dependent_round(const LPSolution& solution, std::uint64_t rng_seed);

// Pairs fractional variables of the same node first, then across nodes.
// Per-advertiser seed counts are not preserved; the LPSolution overload
// throws ConfigError when the LP had seed caps.
Allocation star_round(const FractionalAllocation& x, Engine& engine);
Allocation star_round(const LPSolution& solution, std::uint64_t rng_seed);

// star_round without seed caps, dependent_round with them.
Allocation round_solution(const LPSolution& solution, Engine& engine);

struct RoundedRevenue {
  double uncapped = 0.0;  // sum_j (n / rho_j) c_j * (sets covered)
  double capped = 0.0;    // budgets applied per advertiser
};
RoundedRevenue rounded_revenue(const LPInstance& lp, const Allocation& alloc);

struct RoundingTrial {
  std::size_t trial = 0;
  double uncapped = 0.0;
  double capped = 0.0;
  bool feasible = true;
};

// Trial t rounds with the engine derived from (rng_seed, t).
std::vector<RoundingTrial> run_rounding_trials(const LPInstance& lp, const LPSolution& solution,
                                               std::size_t trials, std::uint64_t rng_seed,
                                               unsigned threads = 1);

// trial,rounded_objective_uncapped,rounded_objective_capped,feasible
void write_rounding_report_csv(std::ostream& out, const std::vector<RoundingTrial>& trials);

struct LpRoundResult {
  Allocation allocation;
  double opt_lp = 0.0;
  LPSolution solution;
  RoundedRevenue revenue;
};

// Build, solve and round once with the engine derived from (rng_seed, 0).
LpRoundResult lp_round_allocate(const ProblemInstance& instance, const CollectionSet& collections,
                                std::uint64_t rng_seed, const LPSolverBackend* backend = nullptr);

}  // namespace coseed

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

// Forward Independent Cascade simulation and the exact live-edge oracle.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coseed/graph.hpp"
#include "coseed/rng.hpp"

namespace coseed {

struct DiffusionOutcome {
  std::vector<NodeId> activated;  // seeds first, then in activation order
  std::size_t rounds = 0;         // rounds that activated at least one node
};

// Reusable single-network simulator; keeps its scratch buffers between runs.
// Not thread-safe; use one per thread.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const InfluenceNetwork& net);

  // Returns the number of activated nodes. Throws DomainError for a seed
  // outside the node range. Duplicate seeds count once.
  std::size_t run(std::span<const NodeId> seeds, Engine& engine,
                  DiffusionOutcome* outcome = nullptr);

 private:
  const InfluenceNetwork* net_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> active_;
};

DiffusionOutcome simulate_ic(const InfluenceNetwork& net, std::span<const NodeId> seeds,
                             std::uint64_t rng_seed);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

// Trial t uses the engine derived from (rng_seed, t), so the estimate does not
// depend on `threads`.
McEstimate estimate_influence_mc(const InfluenceNetwork& net, std::span<const NodeId> seeds,
                                 std::size_t trials, std::uint64_t rng_seed, unsigned threads = 1);

inline constexpr std::size_t kExactArcLimit = 24;
inline constexpr std::size_t kExactNodeLimit = 64;

// Expected reach summed over all 2^|E| live-edge subgraphs. CapacityError
// above kExactArcLimit arcs or kExactNodeLimit nodes.
double exact_influence(const InfluenceNetwork& net, std::span<const NodeId> seeds);

}  // namespace coseed

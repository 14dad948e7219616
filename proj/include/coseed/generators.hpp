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

// Synthetic structures used as stand-ins for real datasets and as small
// test fixtures. All undirected unless stated.

#pragma once

#include <cstdint>

#include "coseed/graph.hpp"

namespace coseed {

// Preferential attachment: every new node links to `attach` distinct earlier
// nodes chosen proportionally to degree. Connected for attach >= 1.
BaseGraph barabasi_albert(std::size_t node_count, std::size_t attach, std::uint64_t rng_seed);

// G(n, p) with p = average_degree / (n - 1).
BaseGraph erdos_renyi(std::size_t node_count, double average_degree, bool directed,
                      std::uint64_t rng_seed);

// Pairing-model d-regular graph; retries until simple. n * d must be even.
BaseGraph random_regular(std::size_t node_count, std::size_t degree, std::uint64_t rng_seed);

// Node 0 is the center; directed stars only carry center -> leaf arcs.
BaseGraph star_graph(std::size_t leaves, bool directed);
BaseGraph path_graph(std::size_t node_count);
BaseGraph cycle_graph(std::size_t node_count);

}  // namespace coseed

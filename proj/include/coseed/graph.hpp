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

// Graph storage and the per-advertiser influence networks built on top of it.
//
// BaseGraph is the simple directed structure (undirected inputs are stored as
// two arcs). InfluenceNetwork attaches an activation probability to every
// arc; zero-probability arcs are not stored, so the network of one advertiser
// can have fewer arcs than the structure it was drawn from.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coseed/types.hpp"

namespace coseed {

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  auto operator<=>(const Arc&) const = default;
};

class BaseGraph {
 public:
  BaseGraph() = default;

  // Self-loops are dropped, duplicates collapsed, arcs sorted by (from, to).
  // An undirected graph stores each input edge as both arcs. original_ids,
  // when given, must have node_count entries; otherwise ids are 0..n-1.
  BaseGraph(std::size_t node_count, std::vector<Arc> arcs, bool directed,
            std::vector<std::uint64_t> original_ids = {});

  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return arcs_.size(); }
  bool directed() const { return directed_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;

  // Out-degree plus in-degree for directed graphs; neighbor count otherwise.
  std::size_t degree(NodeId v) const;

  std::uint64_t original_id(NodeId v) const { return original_ids_[v]; }
  const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }

 private:
  std::size_t node_count_ = 0;
  bool directed_ = true;
  std::vector<Arc> arcs_;
  std::vector<std::uint64_t> original_ids_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

// Parses a whitespace-separated "u v" edge list. Lines starting with '#' and
// blank lines are skipped. Ids may be sparse; they are remapped to 0..n-1 in
// ascending order of the original id. Extra columns (weights) are ignored;
// the first occurrence appends a message to *warnings when non-null.
BaseGraph load_edge_list(std::string_view text, bool directed,
                         std::vector<std::string>* warnings = nullptr);
BaseGraph load_edge_list_file(const std::filesystem::path& path, bool directed,
                              std::vector<std::string>* warnings = nullptr);
void write_edge_list(std::ostream& out, const BaseGraph& graph);

struct WeightedArc {
  NodeId from = 0;
  NodeId to = 0;
  double prob = 0.0;
  bool operator==(const WeightedArc&) const = default;
};

struct Neighbor {
  NodeId node = 0;
  double prob = 0.0;
};

class InfluenceNetwork {
 public:
  InfluenceNetwork() = default;

  // Arcs must be distinct, loop-free, with endpoints < node_count and
  // probabilities in [0, 1] (DomainError otherwise). Zero-probability arcs
  // are dropped.
  InfluenceNetwork(std::size_t node_count, std::vector<WeightedArc> arcs);

  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return arcs_.size(); }
  // Sorted by (from, to); every prob is in (0, 1].
  const std::vector<WeightedArc>& arcs() const { return arcs_; }

  std::span<const Neighbor> out_arcs(NodeId v) const;
  std::span<const Neighbor> in_arcs(NodeId v) const;

  // 0 for pairs that are not stored arcs.
  double probability(NodeId from, NodeId to) const;

  // The arc structure as a directed BaseGraph.
  BaseGraph structure() const;

  bool operator==(const InfluenceNetwork& other) const {
    return node_count_ == other.node_count_ && arcs_ == other.arcs_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<WeightedArc> arcs_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Neighbor> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_;
};

// Per-node parameters drawn uniformly from [0, lambda_max].
std::vector<double> draw_lambdas(std::size_t node_count, double lambda_max, std::uint64_t rng_seed);

// p(u, v) = lambda_u * lambda_v on every arc of base.
InfluenceNetwork assign_lambda_probabilities(const BaseGraph& base,
                                             std::span<const double> lambdas);
InfluenceNetwork assign_lambda_probabilities(const BaseGraph& base, double lambda_max,
                                             std::uint64_t rng_seed);

InfluenceNetwork assign_uniform_probabilities(const BaseGraph& base, double p);

// floor(s * n / 100).
std::size_t swap_count(std::uint32_t s, std::size_t node_count);

// The relabeling produced by `swaps` random transpositions: the swapped
// network satisfies p'(a, b) = p(sigma[a], sigma[b]).
std::vector<NodeId> node_swap_permutation(std::size_t node_count, std::size_t swaps,
                                          std::uint64_t rng_seed);

// Performs swap_count(s, n) node swaps. Each swap exchanges every probability
// incident to two uniformly drawn nodes u, v (u == v allowed, a no-op).
InfluenceNetwork node_swap_variant(const InfluenceNetwork& net, std::uint32_t s,
                                   std::uint64_t rng_seed);

struct ReplicationMode {
  enum class Kind { kIndependent, kIdentical, kSwapped, kUniform };
  Kind kind = Kind::kIndependent;
  double lambda_max = 0.4;
  std::uint32_t s = 0;
  double p = 0.0;

  static ReplicationMode independent(double lambda_max) {
    return {Kind::kIndependent, lambda_max, 0, 0.0};
  }
  static ReplicationMode identical(double lambda_max) {
    return {Kind::kIdentical, lambda_max, 0, 0.0};
  }
  static ReplicationMode swapped(double lambda_max, std::uint32_t s) {
    return {Kind::kSwapped, lambda_max, s, 0.0};
  }
  static ReplicationMode uniform(double p) { return {Kind::kUniform, 0.0, 0, p}; }
};

std::vector<InfluenceNetwork> replicate_for_advertisers(const BaseGraph& base, std::size_t m,
                                                        const ReplicationMode& mode,
                                                        std::uint64_t rng_seed);

// "u v j p" per arc, ids translated through ids.original_ids(), p printed
// with 17 significant digits.
void write_probability_dump(std::ostream& out, std::span<const InfluenceNetwork> networks,
                            const BaseGraph& ids);
std::vector<InfluenceNetwork> read_probability_dump(std::string_view text, const BaseGraph& ids);

}  // namespace coseed

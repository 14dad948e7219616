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

// Reverse-reachable (RR) set sampling.
//
// A sample picks a root uniformly at random and collects every node that
// reaches it in a random live-edge graph. For a seed set S, n * I(S) / rho is
// an unbiased estimate of the expected cascade size, where I(S) is the number
// of the rho samples that S intersects.
//
// The worst-case sample size that makes every candidate seed set accurate
// simultaneously is
//   rho >= 9 n^3 m^2 (c log n + log m + log C(n, k) + log 2) / (OPT_lb eps^2),
// far beyond what desk-scale runs can afford. default_sample_count() returns
// the empirically calibrated 10 n instead (see bench::run_calibration).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coseed/graph.hpp"

namespace coseed {

class RRCollection {
 public:
  RRCollection() = default;

  // Builds the collection from explicit sets. Members are sorted and
  // deduplicated; every set must contain its root (DomainError otherwise).
  static RRCollection from_sets(AdvertiserId advertiser, std::size_t node_count,
                                std::vector<NodeId> roots, std::vector<std::vector<NodeId>> sets);

  AdvertiserId advertiser() const { return advertiser_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t size() const { return roots_.size(); }

  NodeId root(std::size_t i) const { return roots_[i]; }
  // Sorted ascending.
  std::span<const NodeId> set(std::size_t i) const {
    return {members_.data() + set_offsets_[i], set_offsets_[i + 1] - set_offsets_[i]};
  }
  // Indices of the sets containing v, ascending.
  std::span<const std::uint32_t> sets_containing(NodeId v) const {
    return {index_.data() + index_offsets_[v], index_offsets_[v + 1] - index_offsets_[v]};
  }
  std::size_t total_members() const { return members_.size(); }

  bool operator==(const RRCollection& other) const;

 private:
  friend RRCollection sample_rr_sets(const InfluenceNetwork&, AdvertiserId, std::size_t,
                                     std::uint64_t, unsigned);
  void build_index();

  AdvertiserId advertiser_ = 0;
  std::size_t node_count_ = 0;
  std::vector<NodeId> roots_;
  std::vector<std::size_t> set_offsets_{0};
  std::vector<NodeId> members_;
  std::vector<std::size_t> index_offsets_;
  std::vector<std::uint32_t> index_;
};

// Draws `count` RR sets. Sample i uses an engine derived from (rng_seed, i),
// so the collection is identical for every thread count.
RRCollection sample_rr_sets(const InfluenceNetwork& net, AdvertiserId advertiser, std::size_t count,
                            std::uint64_t rng_seed, unsigned threads = 1);

// Number of sets hit by `seeds`.
std::size_t coverage_count(const RRCollection& coll, std::span<const NodeId> seeds);

// n * I(S) / rho.
double estimate_reach(const RRCollection& coll, std::span<const NodeId> seeds);

// 10 n.
std::size_t default_sample_count(std::size_t node_count);

// Tracks which sets are already covered so that marginal coverage queries
// cost O(|sets containing v|). Single writer.
class CoverageTracker {
 public:
  explicit CoverageTracker(const RRCollection& coll);

  std::size_t covered() const { return covered_count_; }
  // Sets containing v that are not yet covered.
  std::size_t uncovered_hits(NodeId v) const;
  // Marks every set containing v as covered; returns how many were new.
  std::size_t cover(NodeId v);
  void reset();

 private:
  const RRCollection* coll_;
  std::vector<std::uint8_t> covered_;
  std::size_t covered_count_ = 0;
};

// Binary layout: "CSRRSET1", u64 n, u64 rho, u32 advertiser, then per set
// u32 root, u32 length, length sorted u32 node ids. Little-endian.
void write_rr_binary(std::ostream& out, const RRCollection& coll);
RRCollection read_rr_binary(std::istream& in);

}  // namespace coseed

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

// Seed allocations over (node, advertiser) pairs and the constraint oracles
// that bound them.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coseed/graph.hpp"
#include "coseed/types.hpp"

namespace coseed {

struct GroundElement {
  NodeId node = 0;
  AdvertiserId advertiser = 0;

  bool operator==(const GroundElement&) const = default;
  // Advertiser first, then node.
  std::strong_ordering operator<=>(const GroundElement& other) const {
    if (auto c = advertiser <=> other.advertiser; c != 0) return c;
    return node <=> other.node;
  }
};

// A set of ground elements with per-advertiser and per-node views kept in
// sync. Value type.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::size_t node_count, std::size_t advertiser_count);

  std::size_t node_count() const { return node_count_; }
  std::size_t advertiser_count() const { return by_advertiser_.size(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Return false when the element was already present / absent. DomainError
  // for out-of-range ids.
  bool insert(GroundElement e);
  bool erase(GroundElement e);
  bool contains(GroundElement e) const;

  // Sorted ascending.
  const std::vector<NodeId>& seeds(AdvertiserId j) const { return by_advertiser_[j]; }
  const std::vector<AdvertiserId>& advertisers_at(NodeId v) const { return by_node_[v]; }
  // Sorted by (advertiser, node).
  std::vector<GroundElement> elements() const;

  bool operator==(const Allocation& other) const {
    return node_count_ == other.node_count_ && by_advertiser_ == other.by_advertiser_;
  }

 private:
  void check(GroundElement e) const;

  std::size_t node_count_ = 0;
  std::size_t size_ = 0;
  std::vector<std::vector<NodeId>> by_advertiser_;
  std::vector<std::vector<AdvertiserId>> by_node_;
};

struct ConstraintSystem {
  std::vector<std::uint32_t> exposure_bounds;                 // r_v, one per node
  std::optional<std::vector<std::uint32_t>> advertiser_caps;  // k_j
  std::size_t total_cap = 0;                                  // K

  // r_v = exposure_bound for every node.
  static ConstraintSystem uniform(std::size_t node_count, std::uint32_t exposure_bound,
                                  std::size_t total_cap,
                                  std::optional<std::vector<std::uint32_t>> caps = std::nullopt);

  // ConfigError when the vectors do not match (n, m).
  void validate(std::size_t node_count, std::size_t advertiser_count) const;
};

// Independence system over the n * m ground elements. Element i is
// (i % n, i / n). Sets passed to the oracles must not repeat elements.
class Matroid {
 public:
  Matroid(std::size_t node_count, std::size_t advertiser_count)
      : node_count_(node_count), advertiser_count_(advertiser_count) {}
  virtual ~Matroid() = default;

  std::size_t node_count() const { return node_count_; }
  std::size_t advertiser_count() const { return advertiser_count_; }
  std::size_t ground_size() const { return node_count_ * advertiser_count_; }
  GroundElement element_at(std::size_t i) const {
    return {static_cast<NodeId>(i % node_count_), static_cast<AdvertiserId>(i / node_count_)};
  }
  std::size_t index_of(GroundElement e) const { return e.advertiser * node_count_ + e.node; }

  virtual bool is_independent(std::span<const GroundElement> set) const = 0;
  // Must agree with is_independent(set + e) whenever set is independent.
  virtual bool can_add(std::span<const GroundElement> set, GroundElement e) const;

 private:
  std::size_t node_count_;
  std::size_t advertiser_count_;
};

// At most caps[c] elements from each class c, optionally at most
// `truncation` elements in total.
class PartitionMatroid : public Matroid {
 public:
  using ClassFn = std::function<std::size_t(GroundElement)>;

  PartitionMatroid(std::size_t node_count, std::size_t advertiser_count, ClassFn class_of,
                   std::vector<std::size_t> caps, std::optional<std::size_t> truncation);

  bool is_independent(std::span<const GroundElement> set) const override;
  bool can_add(std::span<const GroundElement> set, GroundElement e) const override;

  // Incremental counters for one growing set.
  class State {
   public:
    bool can_add(GroundElement e) const;
    void add(GroundElement e);
    void remove(GroundElement e);
    std::size_t size() const { return total_; }

   private:
    friend class PartitionMatroid;
    explicit State(const PartitionMatroid* m);
    const PartitionMatroid* matroid_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
  };
  State make_state() const { return State(this); }

 private:
  ClassFn class_of_;
  std::vector<std::size_t> caps_;
  std::optional<std::size_t> truncation_;
};

// Wraps an arbitrary predicate; used to build negative controls.
class FunctionMatroid : public Matroid {
 public:
  using Predicate = std::function<bool(std::span<const GroundElement>)>;
  FunctionMatroid(std::size_t node_count, std::size_t advertiser_count, Predicate independent)
      : Matroid(node_count, advertiser_count), independent_(std::move(independent)) {}
  bool is_independent(std::span<const GroundElement> set) const override {
    return independent_(set);
  }

 private:
  Predicate independent_;
};

// Classes X_v = {(v, j)} with caps r_v, truncated at K.
PartitionMatroid exposure_matroid(const ConstraintSystem& constraints, std::size_t node_count,
                                  std::size_t advertiser_count);
// Classes N_j = {(v, j)} with caps k_j. ConfigError without advertiser caps.
PartitionMatroid advertiser_matroid(const ConstraintSystem& constraints, std::size_t node_count,
                                    std::size_t advertiser_count);

bool is_feasible(const ConstraintSystem& constraints, const Allocation& alloc);

// Counters for every active constraint at once; what the allocators use to
// grow feasible allocations.
class FeasibilityTracker {
 public:
  FeasibilityTracker(const ConstraintSystem& constraints, std::size_t node_count,
                     std::size_t advertiser_count);
  bool can_add(GroundElement e) const;
  void add(GroundElement e);
  void remove(GroundElement e);
  std::size_t size() const { return total_; }
  bool full() const { return total_ >= constraints_->total_cap; }

 private:
  const ConstraintSystem* constraints_;
  std::vector<std::uint32_t> node_counts_;
  std::vector<std::uint32_t> advertiser_counts_;
  std::size_t total_ = 0;
};

inline constexpr std::size_t kExchangeGroundLimit = 14;

// Exhaustive check of the independence axioms: the empty set is independent,
// independence is closed under removal, and any independent A smaller than an
// independent B by one can be extended by an element of B. CapacityError when
// the ground set exceeds kExchangeGroundLimit.
bool verify_exchange_property(const Matroid& matroid);

// "node,advertiser" header, rows sorted by (advertiser, node). Node ids are
// written through `ids` when given.
void write_allocation_csv(std::ostream& out, const Allocation& alloc,
                          const BaseGraph* ids = nullptr);
Allocation read_allocation_csv(std::string_view text, std::size_t node_count,
                               std::size_t advertiser_count, const BaseGraph* ids = nullptr);

}  // namespace coseed

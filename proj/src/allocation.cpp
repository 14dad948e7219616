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

#include "coseed/allocation.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <string>
#include <unordered_map>

#include "text_util.hpp"

namespace coseed {

Allocation::Allocation(std::size_t node_count, std::size_t advertiser_count)
    : node_count_(node_count), by_advertiser_(advertiser_count), by_node_(node_count) {}

void Allocation::check(GroundElement e) const {
  if (e.node >= node_count_ || e.advertiser >= by_advertiser_.size()) {
    throw DomainError("ground element (" + std::to_string(e.node) + ", " +
                      std::to_string(e.advertiser) + ") out of range");
  }
}

bool Allocation::insert(GroundElement e) {
  check(e);
  auto& seeds = by_advertiser_[e.advertiser];
  auto it = std::lower_bound(seeds.begin(), seeds.end(), e.node);
  if (it != seeds.end() && *it == e.node) return false;
  seeds.insert(it, e.node);
  auto& ads = by_node_[e.node];
  ads.insert(std::lower_bound(ads.begin(), ads.end(), e.advertiser), e.advertiser);
  ++size_;
  return true;
}

bool Allocation::erase(GroundElement e) {
  check(e);
  auto& seeds = by_advertiser_[e.advertiser];
  auto it = std::lower_bound(seeds.begin(), seeds.end(), e.node);
  if (it == seeds.end() || *it != e.node) return false;
  seeds.erase(it);
  auto& ads = by_node_[e.node];
  ads.erase(std::lower_bound(ads.begin(), ads.end(), e.advertiser));
  --size_;
  return true;
}

bool Allocation::contains(GroundElement e) const {
  check(e);
  return std::binary_search(by_advertiser_[e.advertiser].begin(),
                            by_advertiser_[e.advertiser].end(), e.node);
}

std::vector<GroundElement> Allocation::elements() const {
  std::vector<GroundElement> out;
  out.reserve(size_);
  for (std::size_t j = 0; j < by_advertiser_.size(); ++j) {
    for (NodeId v : by_advertiser_[j]) out.push_back({v, static_cast<AdvertiserId>(j)});
  }
  return out;
}

ConstraintSystem ConstraintSystem::uniform(std::size_t node_count, std::uint32_t exposure_bound,
                                           std::size_t total_cap,
                                           std::optional<std::vector<std::uint32_t>> caps) {
  ConstraintSystem c;
  c.exposure_bounds.assign(node_count, exposure_bound);
  c.advertiser_caps = std::move(caps);
  c.total_cap = total_cap;
  return c;
}

void ConstraintSystem::validate(std::size_t node_count, std::size_t advertiser_count) const {
  if (exposure_bounds.size() != node_count) {
    throw ConfigError("exposure bounds list has " + std::to_string(exposure_bounds.size()) +
                      " entries for " + std::to_string(node_count) + " nodes");
  }
  if (advertiser_caps && advertiser_caps->size() != advertiser_count) {
    throw ConfigError("seed caps list has " + std::to_string(advertiser_caps->size()) +
                      " entries for " + std::to_string(advertiser_count) + " advertisers");
  }
}

bool Matroid::can_add(std::span<const GroundElement> set, GroundElement e) const {
  std::vector<GroundElement> grown(set.begin(), set.end());
  grown.push_back(e);
  return is_independent(grown);
}

PartitionMatroid::PartitionMatroid(std::size_t node_count, std::size_t advertiser_count,
                                   ClassFn class_of, std::vector<std::size_t> caps,
                                   std::optional<std::size_t> truncation)
    : Matroid(node_count, advertiser_count),
      class_of_(std::move(class_of)),
      caps_(std::move(caps)),
      truncation_(truncation) {}

bool PartitionMatroid::is_independent(std::span<const GroundElement> set) const {
  if (truncation_ && set.size() > *truncation_) return false;
  std::vector<std::size_t> counts(caps_.size(), 0);
  for (GroundElement e : set) {
    const std::size_t c = class_of_(e);
    if (++counts[c] > caps_[c]) return false;
  }
  return true;
}

bool PartitionMatroid::can_add(std::span<const GroundElement> set, GroundElement e) const {
  if (truncation_ && set.size() + 1 > *truncation_) return false;
  const std::size_t c = class_of_(e);
  std::size_t same = 1;
  for (GroundElement f : set) same += class_of_(f) == c;
  return same <= caps_[c];
}

PartitionMatroid::State::State(const PartitionMatroid* m)
    : matroid_(m), counts_(m->caps_.size(), 0) {}

bool PartitionMatroid::State::can_add(GroundElement e) const {
  if (matroid_->truncation_ && total_ + 1 > *matroid_->truncation_) return false;
  const std::size_t c = matroid_->class_of_(e);
  return counts_[c] + 1 <= matroid_->caps_[c];
}

void PartitionMatroid::State::add(GroundElement e) {
  ++counts_[matroid_->class_of_(e)];
  ++total_;
}

void PartitionMatroid::State::remove(GroundElement e) {
  --counts_[matroid_->class_of_(e)];
  --total_;
}

PartitionMatroid exposure_matroid(const ConstraintSystem& constraints, std::size_t node_count,
                                  std::size_t advertiser_count) {
  constraints.validate(node_count, advertiser_count);
  std::vector<std::size_t> caps(constraints.exposure_bounds.begin(),
                                constraints.exposure_bounds.end());
  return PartitionMatroid(
      node_count, advertiser_count, [](GroundElement e) { return std::size_t{e.node}; },
      std::move(caps), constraints.total_cap);
}

PartitionMatroid advertiser_matroid(const ConstraintSystem& constraints, std::size_t node_count,
                                    std::size_t advertiser_count) {
  if (!constraints.advertiser_caps) {
    throw ConfigError("advertiser matroid needs per-advertiser seed caps");
  }
  constraints.validate(node_count, advertiser_count);
  std::vector<std::size_t> caps(constraints.advertiser_caps->begin(),
                                constraints.advertiser_caps->end());
  return PartitionMatroid(
      node_count, advertiser_count, [](GroundElement e) { return std::size_t{e.advertiser}; },
      std::move(caps), std::nullopt);
}

bool is_feasible(const ConstraintSystem& constraints, const Allocation& alloc) {
  const std::size_t n = alloc.node_count();
  const std::size_t m = alloc.advertiser_count();
  if (alloc.size() > constraints.total_cap) return false;
  for (std::size_t v = 0; v < n && v < constraints.exposure_bounds.size(); ++v) {
    if (alloc.advertisers_at(static_cast<NodeId>(v)).size() > constraints.exposure_bounds[v]) {
      return false;
    }
  }
  if (constraints.exposure_bounds.size() < n) {
    for (std::size_t v = constraints.exposure_bounds.size(); v < n; ++v) {
      if (!alloc.advertisers_at(static_cast<NodeId>(v)).empty()) return false;
    }
  }
  if (constraints.advertiser_caps) {
    const auto& caps = *constraints.advertiser_caps;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t cap = j < caps.size() ? caps[j] : 0;
      if (alloc.seeds(static_cast<AdvertiserId>(j)).size() > cap) return false;
    }
  }
  return true;
}

FeasibilityTracker::FeasibilityTracker(const ConstraintSystem& constraints, std::size_t node_count,
                                       std::size_t advertiser_count)
    : constraints_(&constraints),
      node_counts_(node_count, 0),
      advertiser_counts_(advertiser_count, 0) {
  constraints.validate(node_count, advertiser_count);
}

bool FeasibilityTracker::can_add(GroundElement e) const {
  if (total_ + 1 > constraints_->total_cap) return false;
  if (node_counts_[e.node] + 1 > constraints_->exposure_bounds[e.node]) return false;
  if (constraints_->advertiser_caps &&
      advertiser_counts_[e.advertiser] + 1 > (*constraints_->advertiser_caps)[e.advertiser]) {
    return false;
  }
  return true;
}

void FeasibilityTracker::add(GroundElement e) {
  ++node_counts_[e.node];
  ++advertiser_counts_[e.advertiser];
  ++total_;
}

void FeasibilityTracker::remove(GroundElement e) {
  --node_counts_[e.node];
  --advertiser_counts_[e.advertiser];
  --total_;
}

bool verify_exchange_property(const Matroid& matroid) {
  const std::size_t g = matroid.ground_size();
  if (g > kExchangeGroundLimit) {
    throw CapacityError("exchange check enumerates at most " +
                        std::to_string(kExchangeGroundLimit) + " ground elements, got " +
                        std::to_string(g));
  }
  const std::uint32_t subsets = std::uint32_t{1} << g;
  std::vector<std::uint8_t> independent(subsets, 0);
  std::vector<GroundElement> set;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    set.clear();
    for (std::uint32_t f = mask; f != 0; f &= f - 1) {
      set.push_back(matroid.element_at(std::countr_zero(f)));
    }
    independent[mask] = matroid.is_independent(set);
  }
  if (!independent[0]) return false;

  std::vector<std::vector<std::uint32_t>> by_size(g + 1);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    if (!independent[mask]) continue;
    for (std::uint32_t f = mask; f != 0; f &= f - 1) {
      if (!independent[mask & ~(f & -f)]) return false;
    }
    by_size[std::popcount(mask)].push_back(mask);
  }
  // With downward closure, exchange between sizes k and k + 1 implies it for
  // every pair of sizes.
  for (std::size_t k = 0; k < g; ++k) {
    for (std::uint32_t a : by_size[k]) {
      for (std::uint32_t b : by_size[k + 1]) {
        bool extended = false;
        for (std::uint32_t f = b & ~a; f != 0; f &= f - 1) {
          if (independent[a | (f & -f)]) {
            extended = true;
            break;
          }
        }
        if (!extended) return false;
      }
    }
  }
  return true;
}

void write_allocation_csv(std::ostream& out, const Allocation& alloc, const BaseGraph* ids) {
  out << "node,advertiser\n";
  for (GroundElement e : alloc.elements()) {
    out << (ids != nullptr ? ids->original_id(e.node) : e.node) << ',' << e.advertiser << '\n';
  }
}

Allocation read_allocation_csv(std::string_view csv, std::size_t node_count,
                               std::size_t advertiser_count, const BaseGraph* ids) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  if (ids != nullptr) {
    for (std::size_t v = 0; v < ids->node_count(); ++v) {
      dense.emplace(ids->original_id(static_cast<NodeId>(v)), static_cast<NodeId>(v));
    }
  }
  Allocation alloc(node_count, advertiser_count);
  bool header_seen = false;
  text::for_each_line(csv, [&](std::string_view line, std::size_t line_no) {
    if (text::is_skippable(line)) return;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("node,advertiser", 0) == 0) return;
    }
    auto comma = line.find(',');
    std::uint64_t v = 0;
    std::uint64_t j = 0;
    if (comma == std::string_view::npos || !text::parse_u64(line.substr(0, comma), v) ||
        !text::parse_u64(line.substr(comma + 1), j)) {
      throw ParseError("expected \"node,advertiser\"", line_no);
    }
    if (ids != nullptr) {
      auto it = dense.find(v);
      if (it == dense.end()) throw ParseError("node id not present in the graph", line_no);
      v = it->second;
    }
    if (v >= node_count || j >= advertiser_count) {
      throw ParseError("ground element out of range", line_no);
    }
    if (!alloc.insert({static_cast<NodeId>(v), static_cast<AdvertiserId>(j)})) {
      throw ParseError("duplicate ground element", line_no);
    }
  });
  return alloc;
}

}  // namespace coseed

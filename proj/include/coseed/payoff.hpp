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

// Advertiser value functions, reach estimators and the host objectives.

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/graph.hpp"
#include "coseed/rrsets.hpp"

namespace coseed {

inline constexpr double kUnlimitedBudget = std::numeric_limits<double>::infinity();

struct AdvertiserProfile {
  double budget = kUnlimitedBudget;  // B_j >= 0
  double price = 1.0;                // c_j > 0, per exposure
  std::optional<std::uint32_t> seed_cap;

  // DomainError on a negative budget or non-positive price.
  void validate() const;
};

// Monotone concave payoff of expected reach.
class ValueFunction {
 public:
  virtual ~ValueFunction() = default;
  virtual double operator()(double reach) const = 0;
};

class CappedLinear : public ValueFunction {
 public:
  explicit CappedLinear(AdvertiserProfile profile) : profile_(profile) {}
  double operator()(double reach) const override;

 private:
  AdvertiserProfile profile_;
};

// min(B, c * reach).
double value_capped_linear(const AdvertiserProfile& profile, double reach);

// Evaluates a value function at three points spread over [0, max_reach] and
// throws DomainError if it decreases or is convex there.
void check_value_function(const ValueFunction& value, double max_reach);

struct ProblemInstance {
  // Unweighted structure for the probability-blind heuristics. Optional; when
  // absent the first network's arcs stand in.
  std::shared_ptr<const BaseGraph> graph;
  std::vector<InfluenceNetwork> networks;  // one per advertiser
  std::vector<AdvertiserProfile> profiles;
  ConstraintSystem constraints;

  std::size_t node_count() const { return networks.empty() ? 0 : networks[0].node_count(); }
  std::size_t advertiser_count() const { return profiles.size(); }
  // ConfigError for inconsistent sizes, DomainError for bad profiles.
  void validate() const;
  BaseGraph structure() const;
};

// Incremental reach of one advertiser's growing seed set.
class ReachTracker {
 public:
  virtual ~ReachTracker() = default;
  virtual double reach() const = 0;
  virtual double reach_with(NodeId v) const = 0;
  virtual void add(NodeId v) = 0;
};

// Expected reach per (advertiser, seed set). The empty set has reach 0.
class ReachEstimator {
 public:
  virtual ~ReachEstimator() = default;
  virtual std::size_t advertiser_count() const = 0;
  virtual std::size_t node_count() const = 0;
  virtual double reach(AdvertiserId j, std::span<const NodeId> seeds) const = 0;
  // Default re-evaluates reach() on every query.
  virtual std::unique_ptr<ReachTracker> tracker(AdvertiserId j) const;
};

using CollectionSet = std::vector<std::shared_ptr<const RRCollection>>;

// n * I(S) / rho on advertiser j's collection. Collections may be shared
// between advertisers whose networks are identical.
class RRReachEstimator : public ReachEstimator {
 public:
  explicit RRReachEstimator(CollectionSet collections);
  std::size_t advertiser_count() const override { return collections_.size(); }
  std::size_t node_count() const override { return collections_[0]->node_count(); }
  double reach(AdvertiserId j, std::span<const NodeId> seeds) const override;
  std::unique_ptr<ReachTracker> tracker(AdvertiserId j) const override;
  const RRCollection& collection(AdvertiserId j) const { return *collections_[j]; }
  const CollectionSet& collections() const { return collections_; }

 private:
  CollectionSet collections_;
};

// exact_influence, memoized per (advertiser, seed set). Thread-safe.
class ExactReachEstimator : public ReachEstimator {
 public:
  explicit ExactReachEstimator(std::span<const InfluenceNetwork> networks);
  std::size_t advertiser_count() const override { return networks_.size(); }
  std::size_t node_count() const override { return networks_[0].node_count(); }
  double reach(AdvertiserId j, std::span<const NodeId> seeds) const override;

 private:
  std::vector<InfluenceNetwork> networks_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<AdvertiserId, std::vector<NodeId>>, double> memo_;
};

// Monte Carlo with common random numbers: every query for advertiser j uses
// the same trial engines, so comparisons between seed sets are paired.
class MonteCarloReachEstimator : public ReachEstimator {
 public:
  MonteCarloReachEstimator(std::span<const InfluenceNetwork> networks, std::size_t trials,
                           std::uint64_t rng_seed, unsigned threads = 1);
  std::size_t advertiser_count() const override { return networks_.size(); }
  std::size_t node_count() const override { return networks_[0].node_count(); }
  double reach(AdvertiserId j, std::span<const NodeId> seeds) const override;

 private:
  std::vector<InfluenceNetwork> networks_;
  std::size_t trials_;
  std::uint64_t rng_seed_;
  unsigned threads_;
};

// Revenue in expectation: sum_j min(B_j, c_j * reach_j). ContractViolation for
// an infeasible allocation.
double objective_revenue(const ProblemInstance& instance, const Allocation& alloc,
                         const ReachEstimator& estimator);

// Expected revenue: caps applied per simulated cascade, then averaged.
// Trial t of advertiser j uses the engine derived from
// (derive_seed(rng_seed, j), t).
double objective_expected_revenue(const ProblemInstance& instance, const Allocation& alloc,
                                  std::size_t trials, std::uint64_t rng_seed, unsigned threads = 1);

// Revenue minus beta * sum_j max(c_j * reach_j - B_j, 0). DomainError unless
// beta is in [0, 1].
double penalty_objective(const ProblemInstance& instance, const Allocation& alloc,
                         const ReachEstimator& estimator, double beta);

enum class Objective { kRevenue, kPenalty };

// Change of the selected objective when `element` is added. ContractViolation
// if it is already allocated.
double marginal_gain(const ProblemInstance& instance, const Allocation& alloc,
                     GroundElement element, Objective objective, const ReachEstimator& estimator,
                     double beta = 0.0);

// Per-advertiser terms shared by the objectives and the allocators.
inline double overshoot(const AdvertiserProfile& profile, double reach) {
  const double excess = profile.price * reach - profile.budget;
  return excess > 0.0 ? excess : 0.0;
}
inline double penalized_value(const AdvertiserProfile& profile, double reach, double beta) {
  return value_capped_linear(profile, reach) - beta * overshoot(profile, reach);
}

}  // namespace coseed

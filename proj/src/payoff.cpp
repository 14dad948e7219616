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

#include "coseed/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "coseed/diffusion.hpp"
#include "coseed/rng.hpp"

namespace coseed {

void AdvertiserProfile::validate() const {
  if (!(budget >= 0.0)) throw DomainError("budget must be non-negative");
  if (!(price > 0.0) || std::isinf(price)) throw DomainError("price per exposure must be positive");
}

double CappedLinear::operator()(double reach) const { return value_capped_linear(profile_, reach); }

double value_capped_linear(const AdvertiserProfile& profile, double reach) {
  return std::min(profile.budget, profile.price * reach);
}

void check_value_function(const ValueFunction& value, double max_reach) {
  const double a = 0.0;
  const double b = max_reach / 2.0;
  const double c = max_reach;
  const double fa = value(a);
  const double fb = value(b);
  const double fc = value(c);
  const double slack = 1e-9 * (1.0 + std::abs(fc));
  if (fb < fa - slack || fc < fb - slack) throw DomainError("value function decreases");
  if (fb < (fa + fc) / 2.0 - slack) throw DomainError("value function is not concave");
}

void ProblemInstance::validate() const {
  const std::size_t m = profiles.size();
  if (m == 0) throw ConfigError("at least one advertiser is required");
  if (networks.size() != m) {
    throw ConfigError(std::to_string(networks.size()) + " networks for " + std::to_string(m) +
                      " advertisers");
  }
  const std::size_t n = networks[0].node_count();
  for (const auto& net : networks) {
    if (net.node_count() != n) throw ConfigError("advertiser networks differ in node count");
  }
  if (graph && graph->node_count() != n) throw ConfigError("graph and networks differ in size");
  for (const auto& p : profiles) p.validate();
  constraints.validate(n, m);
}

BaseGraph ProblemInstance::structure() const {
  if (graph) return *graph;
  if (networks.empty()) return BaseGraph();
  return networks[0].structure();
}

namespace {

class RecomputingTracker : public ReachTracker {
 public:
  RecomputingTracker(const ReachEstimator* est, AdvertiserId j) : est_(est), j_(j) {}
  double reach() const override { return current_; }
  double reach_with(NodeId v) const override {
    std::vector<NodeId> grown = seeds_;
    grown.insert(std::lower_bound(grown.begin(), grown.end(), v), v);
    return est_->reach(j_, grown);
  }
  void add(NodeId v) override {
    seeds_.insert(std::lower_bound(seeds_.begin(), seeds_.end(), v), v);
    current_ = est_->reach(j_, seeds_);
  }

 private:
  const ReachEstimator* est_;
  AdvertiserId j_;
  std::vector<NodeId> seeds_;
  double current_ = 0.0;
};

class CoverageReachTracker : public ReachTracker {
 public:
  explicit CoverageReachTracker(const RRCollection& coll)
      : tracker_(coll),
        scale_(static_cast<double>(coll.node_count()) / static_cast<double>(coll.size())) {}
  double reach() const override { return scale_ * static_cast<double>(tracker_.covered()); }
  double reach_with(NodeId v) const override {
    return scale_ * static_cast<double>(tracker_.covered() + tracker_.uncovered_hits(v));
  }
  void add(NodeId v) override { tracker_.cover(v); }

 private:
  CoverageTracker tracker_;
  double scale_;
};

}  // namespace

std::unique_ptr<ReachTracker> ReachEstimator::tracker(AdvertiserId j) const {
  return std::make_unique<RecomputingTracker>(this, j);
}

RRReachEstimator::RRReachEstimator(CollectionSet collections)
    : collections_(std::move(collections)) {
  if (collections_.empty()) throw ConfigError("no RR collections");
  for (const auto& c : collections_) {
    if (!c || c->size() == 0) throw ConfigError("empty RR collection");
    if (c->node_count() != collections_[0]->node_count()) {
      throw ConfigError("RR collections differ in node count");
    }
  }
}

double RRReachEstimator::reach(AdvertiserId j, std::span<const NodeId> seeds) const {
  // Same arithmetic as CoverageReachTracker so both paths agree bit for bit.
  const RRCollection& c = *collections_[j];
  const double scale = static_cast<double>(c.node_count()) / static_cast<double>(c.size());
  return scale * static_cast<double>(coverage_count(c, seeds));
}

std::unique_ptr<ReachTracker> RRReachEstimator::tracker(AdvertiserId j) const {
  return std::make_unique<CoverageReachTracker>(*collections_[j]);
}

ExactReachEstimator::ExactReachEstimator(std::span<const InfluenceNetwork> networks)
    : networks_(networks.begin(), networks.end()) {
  if (networks_.empty()) throw ConfigError("no networks");
}

double ExactReachEstimator::reach(AdvertiserId j, std::span<const NodeId> seeds) const {
  std::vector<NodeId> key(seeds.begin(), seeds.end());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({j, key});
    if (it != memo_.end()) return it->second;
  }
  const double value = exact_influence(networks_.at(j), key);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_pair(j, std::move(key)), value);
  return value;
}

MonteCarloReachEstimator::MonteCarloReachEstimator(std::span<const InfluenceNetwork> networks,
                                                   std::size_t trials, std::uint64_t rng_seed,
                                                   unsigned threads)
    : networks_(networks.begin(), networks.end()),
      trials_(trials),
      rng_seed_(rng_seed),
      threads_(threads) {
  if (networks_.empty()) throw ConfigError("no networks");
  if (trials_ == 0) throw DomainError("at least one trial is required");
}

double MonteCarloReachEstimator::reach(AdvertiserId j, std::span<const NodeId> seeds) const {
  if (seeds.empty()) return 0.0;
  return estimate_influence_mc(networks_.at(j), seeds, trials_, derive_seed(rng_seed_, j), threads_)
      .mean;
}

namespace {

void require_feasible(const ProblemInstance& instance, const Allocation& alloc) {
  if (alloc.node_count() != instance.node_count() ||
      alloc.advertiser_count() != instance.advertiser_count()) {
    throw ContractViolation("allocation does not match the instance dimensions");
  }
  if (!is_feasible(instance.constraints, alloc)) {
    throw ContractViolation("allocation violates the constraint system");
  }
}

double seed_reach(const ReachEstimator& estimator, AdvertiserId j, const Allocation& alloc) {
  const auto& seeds = alloc.seeds(j);
  return seeds.empty() ? 0.0 : estimator.reach(j, seeds);
}

}  // namespace

double objective_revenue(const ProblemInstance& instance, const Allocation& alloc,
                         const ReachEstimator& estimator) {
  require_feasible(instance, alloc);
  double total = 0.0;
  for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
    const auto a = static_cast<AdvertiserId>(j);
    total += value_capped_linear(instance.profiles[j], seed_reach(estimator, a, alloc));
  }
  return total;
}

double objective_expected_revenue(const ProblemInstance& instance, const Allocation& alloc,
                                  std::size_t trials, std::uint64_t rng_seed, unsigned threads) {
  if (trials == 0) throw DomainError("at least one trial is required");
  require_feasible(instance, alloc);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<double> per_trial(trials, 0.0);
  auto work = [&](unsigned w) {
    std::vector<CascadeSimulator> sims;
    sims.reserve(instance.advertiser_count());
    for (const auto& net : instance.networks) sims.emplace_back(net);
    const std::size_t lo = trials * w / threads;
    const std::size_t hi = trials * (w + 1) / threads;
    for (std::size_t t = lo; t < hi; ++t) {
      double value = 0.0;
      for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
        const auto& seeds = alloc.seeds(static_cast<AdvertiserId>(j));
        if (seeds.empty()) continue;
        Engine engine = make_engine(derive_seed(rng_seed, j), t);
        const double reach = static_cast<double>(sims[j].run(seeds, engine));
        value += value_capped_linear(instance.profiles[j], reach);
      }
      per_trial[t] = value;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  double total = 0.0;
  for (double v : per_trial) total += v;
  return total / static_cast<double>(trials);
}

double penalty_objective(const ProblemInstance& instance, const Allocation& alloc,
                         const ReachEstimator& estimator, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  require_feasible(instance, alloc);
  double revenue = 0.0;
  double excess = 0.0;
  for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
    const double reach = seed_reach(estimator, static_cast<AdvertiserId>(j), alloc);
    revenue += value_capped_linear(instance.profiles[j], reach);
    excess += overshoot(instance.profiles[j], reach);
  }
  return revenue - beta * excess;
}

double marginal_gain(const ProblemInstance& instance, const Allocation& alloc,
                     GroundElement element, Objective objective, const ReachEstimator& estimator,
                     double beta) {
  if (alloc.contains(element)) throw ContractViolation("element is already allocated");
  if (objective == Objective::kPenalty && !(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("beta must lie in [0, 1]");
  }
  const double b = objective == Objective::kPenalty ? beta : 0.0;
  const AdvertiserId j = element.advertiser;
  const auto& seeds = alloc.seeds(j);
  std::vector<NodeId> grown = seeds;
  grown.insert(std::lower_bound(grown.begin(), grown.end(), element.node), element.node);
  const double before = seeds.empty() ? 0.0 : estimator.reach(j, seeds);
  const double after = estimator.reach(j, grown);
  const auto& profile = instance.profiles[j];
  return penalized_value(profile, after, b) - penalized_value(profile, before, b);
}

}  // namespace coseed

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

#include "coseed/greedy.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <queue>
#include <sstream>

namespace coseed {

namespace {

struct Candidate {
  double gain;
  GroundElement element;
  std::size_t round;  // when `gain` was computed
};

// True when a should be chosen over b.
bool better(double gain_a, GroundElement a, double gain_b, GroundElement b) {
  if (gain_a != gain_b) return gain_a > gain_b;
  return a < b;
}

struct HeapOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return better(b.gain, b.element, a.gain, a.element);
  }
};

class GreedyState {
 public:
  GreedyState(const ProblemInstance& instance, const ReachEstimator& estimator, double beta)
      : instance_(instance),
        beta_(beta),
        alloc_(instance.node_count(), instance.advertiser_count()),
        feasibility_(instance.constraints, instance.node_count(), instance.advertiser_count()) {
    instance.validate();
    if (estimator.advertiser_count() < instance.advertiser_count() ||
        estimator.node_count() != instance.node_count()) {
      throw ConfigError("estimator does not cover the instance");
    }
    for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
      trackers_.push_back(estimator.tracker(static_cast<AdvertiserId>(j)));
      current_.push_back(penalized_value(instance.profiles[j], 0.0, beta));
    }
  }

  double gain(GroundElement e) {
    ++evaluations_;
    const auto& profile = instance_.profiles[e.advertiser];
    const double after = trackers_[e.advertiser]->reach_with(e.node);
    return penalized_value(profile, after, beta_) - current_[e.advertiser];
  }

  bool can_add(GroundElement e) const { return feasibility_.can_add(e) && !alloc_.contains(e); }
  bool full() const { return feasibility_.full(); }

  void add(GroundElement e, double gain, GreedyResult& result) {
    alloc_.insert(e);
    feasibility_.add(e);
    trackers_[e.advertiser]->add(e.node);
    current_[e.advertiser] =
        penalized_value(instance_.profiles[e.advertiser], trackers_[e.advertiser]->reach(), beta_);
    result.trace.push_back({result.trace.size() + 1, e, gain, objective()});
  }

  double objective() const {
    double revenue = 0.0;
    double excess = 0.0;
    for (std::size_t j = 0; j < current_.size(); ++j) {
      const double reach = trackers_[j]->reach();
      revenue += value_capped_linear(instance_.profiles[j], reach);
      excess += overshoot(instance_.profiles[j], reach);
    }
    return revenue - beta_ * excess;
  }

  void finish(GreedyResult& result) {
    result.objective = objective();
    result.evaluations = evaluations_;
    result.allocation = std::move(alloc_);
  }

  std::size_t ground_size() const { return instance_.node_count() * instance_.advertiser_count(); }
  GroundElement element_at(std::size_t i) const {
    const std::size_t n = instance_.node_count();
    return {static_cast<NodeId>(i % n), static_cast<AdvertiserId>(i / n)};
  }

 private:
  const ProblemInstance& instance_;
  double beta_;
  Allocation alloc_;
  FeasibilityTracker feasibility_;
  std::vector<std::unique_ptr<ReachTracker>> trackers_;
  std::vector<double> current_;
  std::size_t evaluations_ = 0;
};

// Scores every feasible element and adds the best while it is positive.
void run_full_scan(GreedyState& state, GreedyResult& result) {
  while (!state.full()) {
    bool found = false;
    double best_gain = 0.0;
    GroundElement best;
    for (std::size_t i = 0; i < state.ground_size(); ++i) {
      const GroundElement e = state.element_at(i);
      if (!state.can_add(e)) continue;
      const double g = state.gain(e);
      if (!found || better(g, e, best_gain, best)) {
        found = true;
        best_gain = g;
        best = e;
      }
    }
    if (!found || !(best_gain > 0.0)) break;
    state.add(best, best_gain, result);
  }
}

void run_lazy(GreedyState& state, GreedyResult& result) {
  std::priority_queue<Candidate, std::vector<Candidate>, HeapOrder> heap;
  for (std::size_t i = 0; i < state.ground_size(); ++i) {
    const GroundElement e = state.element_at(i);
    if (state.can_add(e)) heap.push({state.gain(e), e, 0});
  }
  std::size_t round = 0;
  while (!state.full() && !heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    // Constraint counters only grow, so an element that no longer fits never
    // will again.
    if (!state.can_add(top.element)) continue;
    if (top.round != round) {
      top.gain = state.gain(top.element);
      top.round = round;
      heap.push(top);
      continue;
    }
    // Stale bounds can sit an ulp below the fresh gain, so near-ties are
    // re-scored before committing.
    const double slack = 1e-9 * (1.0 + std::abs(top.gain));
    std::vector<Candidate> near;
    while (!heap.empty() && heap.top().gain >= top.gain - slack) {
      Candidate c = heap.top();
      heap.pop();
      if (!state.can_add(c.element)) continue;
      if (c.round != round) {
        c.gain = state.gain(c.element);
        c.round = round;
      }
      near.push_back(c);
    }
    for (const Candidate& c : near) {
      if (better(c.gain, c.element, top.gain, top.element)) {
        heap.push(top);
        top = c;
      } else {
        heap.push(c);
      }
    }
    if (!(top.gain > 0.0)) break;
    state.add(top.element, top.gain, result);
    ++round;
  }
}

}  // namespace

GreedyResult greedy_allocate(const ProblemInstance& instance, const ReachEstimator& estimator,
                             const GreedyOptions& options) {
  GreedyState state(instance, estimator, 0.0);
  GreedyResult result;
  if (options.lazy) {
    run_lazy(state, result);
  } else {
    run_full_scan(state, result);
  }
  state.finish(result);
  return result;
}

double penalty_guarantee_factor(double beta) { return (1.0 + beta) / (2.0 + 3.0 * beta); }

PenaltyGreedyResult penalty_greedy_allocate(const ProblemInstance& instance,
                                            const ReachEstimator& estimator, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  GreedyState state(instance, estimator, beta);
  PenaltyGreedyResult result;
  result.guarantee_factor = penalty_guarantee_factor(beta);
  for (std::size_t j = 0; j < instance.advertiser_count() && result.precondition_holds; ++j) {
    const auto& profile = instance.profiles[j];
    for (std::size_t v = 0; v < instance.node_count(); ++v) {
      const NodeId seed = static_cast<NodeId>(v);
      const double reach = estimator.reach(static_cast<AdvertiserId>(j), {&seed, 1});
      if (profile.price * reach > profile.budget) {
        result.precondition_holds = false;
        std::ostringstream msg;
        msg << "node " << v << " alone exceeds the budget of advertiser " << j
            << "; the approximation guarantee does not apply";
        result.warnings.push_back(msg.str());
        break;
      }
    }
  }
  run_full_scan(state, result);
  state.finish(result);
  return result;
}

LocalSearchResult local_search_two_matroids(const ProblemInstance& instance,
                                            const ReachEstimator& estimator, double epsilon) {
  if (!instance.constraints.advertiser_caps) {
    throw ConfigError(
        "local search needs per-advertiser seed caps; without them use greedy, which already "
        "carries the stronger single-constraint guarantee");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  LocalSearchResult result;
  GreedyResult start = greedy_allocate(instance, estimator);
  Allocation current = std::move(start.allocation);
  double value = objective_revenue(instance, current, estimator);
  result.start_objective = value;

  const std::size_t n = instance.node_count();
  const std::size_t ground = n * instance.advertiser_count();
  const double factor = 1.0 + epsilon / static_cast<double>(ground);
  auto try_move = [&](const Allocation& candidate) {
    if (!is_feasible(instance.constraints, candidate)) return false;
    const double v = objective_revenue(instance, candidate, estimator);
    if (v > value && v >= factor * value) {
      current = candidate;
      value = v;
      ++result.moves;
      return true;
    }
    return false;
  };

  bool improved = true;
  while (improved) {
    improved = false;
    const std::vector<GroundElement> held = current.elements();
    for (std::size_t i = 0; i < ground && !improved; ++i) {
      const GroundElement in{static_cast<NodeId>(i % n), static_cast<AdvertiserId>(i / n)};
      if (current.contains(in)) continue;
      Allocation added = current;
      added.insert(in);
      if (try_move(added)) {
        improved = true;
        break;
      }
      for (std::size_t a = 0; a < held.size() && !improved; ++a) {
        Allocation one = added;
        one.erase(held[a]);
        if (try_move(one)) {
          improved = true;
          break;
        }
        for (std::size_t b = a + 1; b < held.size(); ++b) {
          Allocation two = one;
          two.erase(held[b]);
          if (try_move(two)) {
            improved = true;
            break;
          }
        }
      }
    }
  }
  result.allocation = std::move(current);
  result.objective = value;
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<GreedyStep>& trace,
                     const BaseGraph* ids) {
  const auto old_precision = out.precision(17);
  out << "round,node,advertiser,gain,objective\n";
  for (const auto& step : trace) {
    out << step.round << ','
        << (ids != nullptr ? ids->original_id(step.element.node) : step.element.node) << ','
        << step.element.advertiser << ',' << step.gain << ',' << step.objective << '\n';
  }
  out.precision(old_precision);
}

}  // namespace coseed

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

#include "coseed/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace coseed {

CascadeSimulator::CascadeSimulator(const InfluenceNetwork& net)
    : net_(&net), stamp_(net.node_count(), 0) {}

std::size_t CascadeSimulator::run(std::span<const NodeId> seeds, Engine& engine,
                                  DiffusionOutcome* outcome) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  active_.clear();
  for (NodeId s : seeds) {
    if (s >= net_->node_count()) throw DomainError("seed id out of range");
    if (stamp_[s] != epoch_) {
      stamp_[s] = epoch_;
      active_.push_back(s);
    }
  }
  // active_[begin, end) is the frontier of the current round; every arc out
  // of a node is tried exactly once, when that node is in the frontier.
  std::size_t begin = 0;
  std::size_t rounds = 0;
  while (begin < active_.size()) {
    const std::size_t end = active_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const Neighbor& nb : net_->out_arcs(active_[i])) {
        if (stamp_[nb.node] == epoch_) continue;
        if (uniform01(engine) < nb.prob) {
          stamp_[nb.node] = epoch_;
          active_.push_back(nb.node);
        }
      }
    }
    if (active_.size() > end) ++rounds;
    begin = end;
  }
  if (outcome != nullptr) {
    outcome->activated = active_;
    outcome->rounds = rounds;
  }
  return active_.size();
}

DiffusionOutcome simulate_ic(const InfluenceNetwork& net, std::span<const NodeId> seeds,
                             std::uint64_t rng_seed) {
  CascadeSimulator sim(net);
  Engine engine = make_engine(rng_seed, 0);
  DiffusionOutcome out;
  sim.run(seeds, engine, &out);
  return out;
}

McEstimate estimate_influence_mc(const InfluenceNetwork& net, std::span<const NodeId> seeds,
                                 std::size_t trials, std::uint64_t rng_seed, unsigned threads) {
  if (trials == 0) throw DomainError("at least one trial is required");
  for (NodeId s : seeds) {
    if (s >= net.node_count()) throw DomainError("seed id out of range");
  }
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  // Integer partial sums make the result independent of how trials are split.
  std::vector<std::uint64_t> sums(threads, 0);
  std::vector<std::uint64_t> squares(threads, 0);
  auto work = [&](unsigned w) {
    CascadeSimulator sim(net);
    const std::size_t lo = trials * w / threads;
    const std::size_t hi = trials * (w + 1) / threads;
    for (std::size_t t = lo; t < hi; ++t) {
      Engine engine = make_engine(rng_seed, t);
      std::uint64_t c = sim.run(seeds, engine);
      sums[w] += c;
      squares[w] += c * c;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  std::uint64_t total_sq = 0;
  for (unsigned w = 0; w < threads; ++w) {
    total += sums[w];
    total_sq += squares[w];
  }
  McEstimate est;
  est.trials = trials;
  const double n = static_cast<double>(trials);
  est.mean = static_cast<double>(total) / n;
  if (trials > 1) {
    double var = (static_cast<double>(total_sq) - n * est.mean * est.mean) / (n - 1.0);
    est.std_error = std::sqrt(std::max(0.0, var) / n);
  }
  return est;
}

double exact_influence(const InfluenceNetwork& net, std::span<const NodeId> seeds) {
  const std::size_t arcs = net.arc_count();
  const std::size_t n = net.node_count();
  if (arcs > kExactArcLimit) {
    throw CapacityError("exact_influence enumerates at most " + std::to_string(kExactArcLimit) +
                        " arcs, got " + std::to_string(arcs));
  }
  if (n > kExactNodeLimit) {
    throw CapacityError("exact_influence supports at most " + std::to_string(kExactNodeLimit) +
                        " nodes, got " + std::to_string(n));
  }
  std::uint64_t seed_mask = 0;
  for (NodeId s : seeds) {
    if (s >= n) throw DomainError("seed id out of range");
    seed_mask |= std::uint64_t{1} << s;
  }
  if (seed_mask == 0) return 0.0;

  const auto& list = net.arcs();
  std::vector<std::uint64_t> out_mask(n, 0);
  double expected = 0.0;
  std::uint64_t previous = 0;
  const std::uint64_t subsets = std::uint64_t{1} << arcs;
  // Gray-code order: consecutive live-edge subsets differ in a single arc.
  for (std::uint64_t i = 0; i < subsets; ++i) {
    const std::uint64_t gray = i ^ (i >> 1);
    if (i > 0) {
      const int flipped = std::countr_zero(gray ^ previous);
      const WeightedArc& a = list[flipped];
      out_mask[a.from] ^= std::uint64_t{1} << a.to;
    }
    previous = gray;

    double weight = 1.0;
    for (std::size_t e = 0; e < arcs && weight != 0.0; ++e) {
      weight *= ((gray >> e) & 1) ? list[e].prob : 1.0 - list[e].prob;
    }
    if (weight == 0.0) continue;

    std::uint64_t reach = seed_mask;
    std::uint64_t frontier = seed_mask;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
        next |= out_mask[std::countr_zero(f)];
      }
      frontier = next & ~reach;
      reach |= next;
    }
    expected += weight * std::popcount(reach);
  }
  return expected;
}

}  // namespace coseed

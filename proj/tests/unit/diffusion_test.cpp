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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "coseed/generators.hpp"
#include "support/oracles.hpp"

namespace coseed {
namespace {

std::vector<NodeId> subset(std::uint32_t mask) {
  std::vector<NodeId> s;
  for (NodeId v = 0; v < 32; ++v) {
    if (mask & (1u << v)) s.push_back(v);
  }
  return s;
}

TEST(SimulateIc, EmptySeeds) {
  const InfluenceNetwork net(3, {{0, 1, 1.0}});
  EXPECT_TRUE(simulate_ic(net, {}, 1).activated.empty());
}

TEST(SimulateIc, CertainArcsGiveReachability) {
  const InfluenceNetwork net(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {2, 0, 1.0}});
  const std::vector<NodeId> seeds{1};
  auto out = simulate_ic(net, seeds, 3);
  std::sort(out.activated.begin(), out.activated.end());
  EXPECT_EQ(out.activated, (std::vector<NodeId>{0, 1, 2}));
}

TEST(SimulateIc, NoArcsLeavesSeeds) {
  const InfluenceNetwork net(4, {});
  const std::vector<NodeId> seeds{0, 3};
  EXPECT_EQ(simulate_ic(net, seeds, 3).activated, seeds);
}

TEST(SimulateIc, SeedOutOfRange) {
  const InfluenceNetwork net(2, {});
  const std::vector<NodeId> seeds{2};
  EXPECT_THROW(simulate_ic(net, seeds, 1), DomainError);
}

TEST(EstimateMc, EmptyAndSaturated) {
  const auto g = cycle_graph(12);
  const auto net = assign_uniform_probabilities(g, 1.0);
  EXPECT_EQ(estimate_influence_mc(net, {}, 100, 1).mean, 0.0);
  const std::vector<NodeId> seeds{4};
  const auto est = estimate_influence_mc(net, seeds, 100, 1);
  EXPECT_EQ(est.mean, 12.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(EstimateMc, SingleArc) {
  const InfluenceNetwork net(2, {{0, 1, 0.5}});
  const std::vector<NodeId> seeds{0};
  const auto est = estimate_influence_mc(net, seeds, 100000, 42);
  EXPECT_NEAR(est.mean, 1.5, 3.0 * est.std_error);
}

TEST(EstimateMc, ThreadCountDoesNotChangeResult) {
  const auto g = barabasi_albert(200, 3, 1);
  const auto net = assign_lambda_probabilities(g, 0.6, 2);
  const std::vector<NodeId> seeds{0, 5, 9};
  const auto a = estimate_influence_mc(net, seeds, 5000, 3, 1);
  const auto b = estimate_influence_mc(net, seeds, 5000, 3, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(ExactInfluence, ClosedForms) {
  const InfluenceNetwork arc(2, {{0, 1, 0.5}});
  const std::vector<NodeId> a{0};
  EXPECT_DOUBLE_EQ(exact_influence(arc, a), 1.5);
  const InfluenceNetwork chain(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_DOUBLE_EQ(exact_influence(chain, a), 3.0);
}

TEST(ExactInfluence, TriangleMatchesHandEnumeration) {
  const InfluenceNetwork tri(3, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 0, 0.5}});
  // Each of the 8 live-edge subgraphs has weight 1/8. From node 0 the reach
  // is 1 without arc 0->1, 2 with 0->1 only, and 3 with 0->1 and 1->2.
  double expected = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    const bool ab = mask & 1;
    const bool bc = mask & 2;
    const int reach = 1 + (ab ? 1 : 0) + (ab && bc ? 1 : 0);
    expected += reach / 8.0;
  }
  const std::vector<NodeId> seeds{0};
  EXPECT_DOUBLE_EQ(exact_influence(tri, seeds), expected);
  EXPECT_DOUBLE_EQ(testing::enumerate_influence(tri, seeds), expected);
}

TEST(ExactInfluence, AgreesWithRecursiveEnumeration) {
  Engine engine = make_engine(5, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = testing::random_network(6, 10, engine);
    for (std::uint32_t mask = 1; mask < 64; mask += 7) {
      const auto seeds = subset(mask);
      EXPECT_NEAR(exact_influence(net, seeds), testing::enumerate_influence(net, seeds), 1e-12);
    }
  }
}

TEST(ExactInfluence, RejectsLargeNetworks) {
  const auto g = barabasi_albert(30, 3, 1);
  const auto net = assign_uniform_probabilities(g, 0.5);
  const std::vector<NodeId> seeds{0};
  EXPECT_THROW(exact_influence(net, seeds), CapacityError);
}

// Exhaustive over every pair S subset of T and every x on small networks.
TEST(ExactInfluence, MonotoneAndSubmodular) {
  Engine engine = make_engine(11, 0);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 5;
    const auto net = testing::random_network(n, 8, engine);
    std::vector<double> f(1u << n);
    for (std::uint32_t mask = 0; mask < f.size(); ++mask)
      f[mask] = exact_influence(net, subset(mask));
    for (std::uint32_t t = 0; t < f.size(); ++t) {
      for (std::uint32_t s = t;; s = (s - 1) & t) {
        EXPECT_LE(f[s], f[t] + 1e-12);
        for (NodeId x = 0; x < n; ++x) {
          if (t & (1u << x)) continue;
          const double gain_s = f[s | (1u << x)] - f[s];
          const double gain_t = f[t | (1u << x)] - f[t];
          EXPECT_GE(gain_s, gain_t - 1e-12);
        }
        if (s == 0) break;
      }
    }
  }
}

}  // namespace
}  // namespace coseed

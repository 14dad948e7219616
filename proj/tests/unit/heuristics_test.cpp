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

#include "coseed/heuristics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "coseed/generators.hpp"

namespace coseed {
namespace {

ProblemInstance structural_instance(const BaseGraph& g, std::size_t m, std::uint32_t r,
                                    std::size_t k, double p = 0.3) {
  ProblemInstance inst;
  inst.graph = std::make_shared<const BaseGraph>(g);
  inst.networks.assign(m, assign_uniform_probabilities(g, p));
  inst.profiles.assign(m, AdvertiserProfile{});
  inst.constraints = ConstraintSystem::uniform(g.node_count(), r, k);
  return inst;
}

TEST(MaxDegree, StarCenterFirst) {
  const auto inst = structural_instance(star_graph(6, false), 2, 1, 2);
  const auto a = max_degree_allocate(inst);
  EXPECT_EQ(a.elements(), (std::vector<GroundElement>{{0, 0}, {1, 1}}));
}

TEST(MaxDegree, ConsecutiveAdvertisersPerNode) {
  // Degrees: node 1 has 3, node 0 and 2 have 2, node 3 has 1.
  const auto g = load_edge_list("0 1\n1 2\n2 0\n1 3\n", false);
  const auto inst = structural_instance(g, 3, 2, 5);
  const auto a = max_degree_allocate(inst);
  EXPECT_EQ(a.advertisers_at(1), (std::vector<AdvertiserId>{0, 1}));
  EXPECT_EQ(a.advertisers_at(0), (std::vector<AdvertiserId>{0, 2}));
  EXPECT_EQ(a.advertisers_at(2), (std::vector<AdvertiserId>{1}));
  EXPECT_EQ(a.size(), 5u);
}

TEST(MaxDegree, ZeroBudgetAndCaps) {
  auto inst = structural_instance(barabasi_albert(30, 2, 1), 3, 1, 0);
  EXPECT_TRUE(max_degree_allocate(inst).empty());
  inst.constraints.total_cap = 10;
  inst.constraints.advertiser_caps = std::vector<std::uint32_t>{1, 0, 5};
  const auto a = max_degree_allocate(inst);
  EXPECT_EQ(a.seeds(0).size(), 1u);
  EXPECT_EQ(a.seeds(1).size(), 0u);
  EXPECT_EQ(a.seeds(2).size(), 5u);
  EXPECT_TRUE(is_feasible(inst.constraints, a));
}

TEST(Eigen, StarCenterHighest) {
  const auto c = eigenvector_centrality(star_graph(8, false));
  EXPECT_TRUE(c.converged);
  for (NodeId v = 1; v < 9; ++v) EXPECT_GT(c.score[0], c.score[v]);
}

TEST(Eigen, CycleIsUniform) {
  const auto g = cycle_graph(9);
  const auto c = eigenvector_centrality(g);
  for (double s : c.score) EXPECT_NEAR(s, 1.0 / 3.0, 1e-9);
  const auto inst = structural_instance(g, 2, 1, 3);
  EXPECT_EQ(eigen_centrality_allocate(inst).elements(),
            (std::vector<GroundElement>{{0, 0}, {2, 0}, {1, 1}}));
}

TEST(Eigen, PathOfFourMatchesClosedForm) {
  // The adjacency matrix of P4 has characteristic polynomial
  // t^4 - 3 t^2 + 1, whose largest root satisfies t^2 = (3 + sqrt 5) / 2.
  // Its eigenvector is (1, t, t, 1) up to scale.
  const double t = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  const double norm = std::sqrt(2.0 + 2.0 * t * t);
  const auto c = eigenvector_centrality(path_graph(4));
  EXPECT_NEAR(c.score[0], 1.0 / norm, 1e-7);
  EXPECT_NEAR(c.score[1], t / norm, 1e-7);
  EXPECT_NEAR(c.score[2], t / norm, 1e-7);
  EXPECT_NEAR(c.score[3], 1.0 / norm, 1e-7);
  const auto inst = structural_instance(path_graph(4), 1, 1, 2);
  EXPECT_EQ(eigen_centrality_allocate(inst).seeds(0), (std::vector<NodeId>{1, 2}));
}

TEST(Eigen, BipartiteGraphConverges) {
  // Plain power iteration oscillates on bipartite graphs.
  const auto c = eigenvector_centrality(path_graph(7));
  EXPECT_TRUE(c.converged);
  EXPECT_GT(c.score[3], c.score[0]);
}

TEST(Heuristics, IgnoreProbabilities) {
  const auto g = barabasi_albert(60, 3, 7);
  auto a = structural_instance(g, 3, 1, 12, 0.05);
  auto b = a;
  b.networks = replicate_for_advertisers(g, 3, ReplicationMode::independent(0.4), 3);
  EXPECT_EQ(max_degree_allocate(a), max_degree_allocate(b));
  EXPECT_EQ(eigen_centrality_allocate(a), eigen_centrality_allocate(b));
  EXPECT_TRUE(is_feasible(a.constraints, max_degree_allocate(a)));
  EXPECT_TRUE(is_feasible(a.constraints, eigen_centrality_allocate(a)));
}

TEST(RoundRobin, PointerIsGlobal) {
  const auto inst = structural_instance(path_graph(5), 3, 1, 4);
  const std::vector<NodeId> order{4, 3, 2, 1, 0};
  const auto a = round_robin_assign(inst, order);
  EXPECT_EQ(a.elements(), (std::vector<GroundElement>{{1, 0}, {4, 0}, {3, 1}, {2, 2}}));
}

}  // namespace
}  // namespace coseed

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

#include "coseed/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "coseed/generators.hpp"
#include "coseed/rng.hpp"

namespace coseed {
namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const InfluenceNetwork& net) {
  Dense d(net.node_count(), std::vector<double>(net.node_count(), 0.0));
  for (const auto& a : net.arcs()) d[a.from][a.to] = a.prob;
  return d;
}

// Literal swap of two nodes in the full probability matrix.
void dense_swap(Dense& p, std::size_t u, std::size_t v) {
  std::swap(p[u], p[v]);
  for (auto& row : p) std::swap(row[u], row[v]);
}

TEST(LoadEdgeList, Directed) {
  const auto g = load_edge_list("0 1\n1 2", true);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.arcs(), (std::vector<Arc>{{0, 1}, {1, 2}}));
}

TEST(LoadEdgeList, UndirectedIsSymmetrized) {
  const auto g = load_edge_list("0 1", false);
  EXPECT_EQ(g.arcs(), (std::vector<Arc>{{0, 1}, {1, 0}}));
}

TEST(LoadEdgeList, SelfLoopDropped) {
  const auto g = load_edge_list("5 5", true);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.arc_count(), 0u);
  EXPECT_EQ(g.original_id(0), 5u);
}

TEST(LoadEdgeList, SparseIdsRemappedAndDuplicatesCollapsed) {
  const auto g = load_edge_list("# comment\n10 30\n\n10 30\n30 20\n", true);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.original_ids(), (std::vector<std::uint64_t>{10, 20, 30}));
  EXPECT_EQ(g.arcs(), (std::vector<Arc>{{0, 2}, {2, 1}}));
}

TEST(LoadEdgeList, ExtraColumnsWarnOnce) {
  std::vector<std::string> warnings;
  const auto g = load_edge_list("0 1 0.5\n1 2 0.7\n", true, &warnings);
  EXPECT_EQ(g.arc_count(), 2u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(LoadEdgeList, MalformedLineReportsLine) {
  try {
    load_edge_list("0 1\nx y\n", true);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadEdgeList, RoundTrip) {
  const auto g = load_edge_list("3 7\n7 9\n9 3\n", true);
  std::ostringstream out;
  write_edge_list(out, g);
  const auto h = load_edge_list(out.str(), true);
  EXPECT_EQ(g.arcs(), h.arcs());
  EXPECT_EQ(g.original_ids(), h.original_ids());
}

TEST(Degree, DirectedCountsBothDirections) {
  const auto g = load_edge_list("0 1\n2 0\n0 3\n", true);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_EQ(g.degree(1), 1u);
}

TEST(LambdaProbabilities, ProductAtUpperEndpoint) {
  const auto g = load_edge_list("0 1", true);
  const std::vector<double> lambdas{0.4, 0.4};
  const auto net = assign_lambda_probabilities(g, lambdas);
  EXPECT_DOUBLE_EQ(net.probability(0, 1), 0.16);
}

TEST(LambdaProbabilities, ZeroFactorRemovesArcs) {
  const auto g = load_edge_list("0 1\n1 2\n2 0", true);
  const std::vector<double> lambdas{0.0, 0.3, 0.2};
  const auto net = assign_lambda_probabilities(g, lambdas);
  EXPECT_EQ(net.probability(0, 1), 0.0);
  EXPECT_EQ(net.probability(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(net.probability(1, 2), 0.06);
  EXPECT_EQ(net.arc_count(), 1u);
}

TEST(LambdaProbabilities, ZeroMaxGivesEmptyNetwork) {
  const auto g = barabasi_albert(50, 2, 3);
  EXPECT_EQ(assign_lambda_probabilities(g, 0.0, 9).arc_count(), 0u);
}

TEST(LambdaProbabilities, DrawsWithinRangeAndDeterministic) {
  const auto a = draw_lambdas(1000, 0.4, 5);
  EXPECT_EQ(a, draw_lambdas(1000, 0.4, 5));
  EXPECT_NE(a, draw_lambdas(1000, 0.4, 6));
  for (double x : a) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 0.4);
  }
}

TEST(UniformProbabilities, EveryArcEqual) {
  const auto g = barabasi_albert(40, 2, 1);
  const auto net = assign_uniform_probabilities(g, 0.02);
  ASSERT_EQ(net.arc_count(), g.arc_count());
  for (const auto& a : net.arcs()) EXPECT_EQ(a.prob, 0.02);
  EXPECT_EQ(assign_uniform_probabilities(g, 0.0).arc_count(), 0u);
}

TEST(NodeSwap, SwapCount) {
  EXPECT_EQ(swap_count(50, 200), 100u);
  EXPECT_EQ(swap_count(0, 200), 0u);
  EXPECT_EQ(swap_count(200, 1000), 2000u);
  EXPECT_EQ(swap_count(1, 150), 1u);
}

TEST(NodeSwap, ZeroSwapsIsIdentity) {
  const auto g = barabasi_albert(60, 3, 4);
  const auto net = assign_lambda_probabilities(g, 0.4, 8);
  EXPECT_EQ(node_swap_variant(net, 0, 11), net);
}

TEST(NodeSwap, MatchesLiteralDenseSwaps) {
  const auto g = erdos_renyi(30, 4.0, true, 2);
  const auto net = assign_lambda_probabilities(g, 0.4, 3);
  for (std::uint32_t s : {1u, 10u, 50u, 200u}) {
    const std::uint64_t seed = 77 + s;
    Dense expected = to_dense(net);
    Engine engine = make_engine(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, net.node_count() - 1);
    for (std::size_t k = 0; k < swap_count(s, net.node_count()); ++k) {
      const std::size_t u = pick(engine);
      const std::size_t v = pick(engine);
      dense_swap(expected, u, v);
    }
    EXPECT_EQ(to_dense(node_swap_variant(net, s, seed)), expected) << "s=" << s;
  }
}

TEST(NodeSwap, PreservesProbabilityMultiset) {
  const auto g = barabasi_albert(80, 3, 5);
  const auto net = assign_lambda_probabilities(g, 0.4, 6);
  const auto swapped = node_swap_variant(net, 120, 7);
  auto probs = [](const InfluenceNetwork& n) {
    std::vector<double> p;
    for (const auto& a : n.arcs()) p.push_back(a.prob);
    std::sort(p.begin(), p.end());
    return p;
  };
  EXPECT_EQ(probs(net), probs(swapped));
  EXPECT_NE(net, swapped);
}

TEST(NodeSwap, SymmetricPairIsNoOp) {
  // Nodes 1 and 2 have identical rows and columns.
  const InfluenceNetwork net(3, {{0, 1, 0.5}, {0, 2, 0.5}, {1, 0, 0.2}, {2, 0, 0.2}});
  Dense d = to_dense(net);
  dense_swap(d, 1, 2);
  EXPECT_EQ(d, to_dense(net));
}

TEST(Replicate, Modes) {
  const auto g = barabasi_albert(50, 2, 1);
  const auto ident = replicate_for_advertisers(g, 4, ReplicationMode::identical(0.4), 3);
  for (const auto& n : ident) EXPECT_EQ(n, ident[0]);
  const auto swapped0 = replicate_for_advertisers(g, 3, ReplicationMode::swapped(0.4, 0), 3);
  for (const auto& n : swapped0) EXPECT_EQ(n, ident[0]);
  const auto indep = replicate_for_advertisers(g, 3, ReplicationMode::independent(0.4), 3);
  EXPECT_FALSE(indep[0] == indep[1] && indep[1] == indep[2]);
  EXPECT_EQ(indep, replicate_for_advertisers(g, 3, ReplicationMode::independent(0.4), 3));
  const auto uni = replicate_for_advertisers(g, 2, ReplicationMode::uniform(0.1), 3);
  EXPECT_EQ(uni[0], uni[1]);
  EXPECT_THROW(replicate_for_advertisers(g, 0, ReplicationMode::uniform(0.1), 3), DomainError);
}

TEST(InfluenceNetwork, RejectsBadArcs) {
  EXPECT_THROW(InfluenceNetwork(2, {{0, 1, 1.5}}), DomainError);
  EXPECT_THROW(InfluenceNetwork(2, {{0, 2, 0.5}}), DomainError);
  EXPECT_THROW(InfluenceNetwork(2, {{1, 1, 0.5}}), DomainError);
}

TEST(ProbabilityDump, RoundTrip) {
  const auto g = load_edge_list("4 8\n8 15\n15 4\n", false);
  const auto nets = replicate_for_advertisers(g, 2, ReplicationMode::independent(0.4), 12);
  std::ostringstream out;
  write_probability_dump(out, nets, g);
  const auto back = read_probability_dump(out.str(), g);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], nets[0]);
  EXPECT_EQ(back[1], nets[1]);
}

TEST(Generators, Shapes) {
  const auto star = star_graph(5, false);
  EXPECT_EQ(star.node_count(), 6u);
  EXPECT_EQ(star.degree(0), 5u);
  const auto cyc = cycle_graph(7);
  for (NodeId v = 0; v < 7; ++v) EXPECT_EQ(cyc.degree(v), 2u);
  const auto reg = random_regular(20, 4, 3);
  for (NodeId v = 0; v < 20; ++v) EXPECT_EQ(reg.degree(v), 4u);
  EXPECT_EQ(barabasi_albert(100, 3, 2).arcs(), barabasi_albert(100, 3, 2).arcs());
}

}  // namespace
}  // namespace coseed

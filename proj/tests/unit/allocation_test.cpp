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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "coseed/graph.hpp"
#include "support/oracles.hpp"

namespace coseed {
namespace {

using Set = std::vector<GroundElement>;

ConstraintSystem random_constraints(std::size_t n, std::size_t m, Engine& engine, bool caps) {
  std::uniform_int_distribution<std::uint32_t> r(0, 2);
  ConstraintSystem c;
  for (std::size_t v = 0; v < n; ++v) c.exposure_bounds.push_back(r(engine));
  c.total_cap = std::uniform_int_distribution<std::size_t>(0, n * m)(engine);
  if (caps) {
    std::vector<std::uint32_t> k;
    for (std::size_t j = 0; j < m; ++j) k.push_back(r(engine) + 1);
    c.advertiser_caps = k;
  }
  return c;
}

TEST(Allocation, InsertEraseAndViews) {
  Allocation a(4, 2);
  EXPECT_TRUE(a.insert({3, 1}));
  EXPECT_TRUE(a.insert({0, 1}));
  EXPECT_TRUE(a.insert({3, 0}));
  EXPECT_FALSE(a.insert({3, 0}));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.seeds(1), (std::vector<NodeId>{0, 3}));
  EXPECT_EQ(a.advertisers_at(3), (std::vector<AdvertiserId>{0, 1}));
  EXPECT_EQ(a.elements(), (Set{{3, 0}, {0, 1}, {3, 1}}));
  EXPECT_TRUE(a.erase({3, 1}));
  EXPECT_FALSE(a.erase({3, 1}));
  EXPECT_FALSE(a.contains({3, 1}));
  EXPECT_THROW(a.insert({4, 0}), DomainError);
  EXPECT_THROW(a.insert({0, 2}), DomainError);
}

TEST(ExposureMatroid, Examples) {
  const auto c = ConstraintSystem::uniform(3, 1, 2);
  const auto mat = exposure_matroid(c, 3, 2);
  EXPECT_TRUE(mat.is_independent(Set{}));
  EXPECT_FALSE(mat.is_independent(Set{{0, 0}, {0, 1}}));
  EXPECT_FALSE(mat.is_independent(Set{{0, 0}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(mat.is_independent(Set{{0, 0}, {1, 1}}));
}

TEST(AdvertiserMatroid, Examples) {
  auto c = ConstraintSystem::uniform(4, 1, 10, std::vector<std::uint32_t>{0, 0});
  const auto none = advertiser_matroid(c, 4, 2);
  EXPECT_TRUE(none.is_independent(Set{}));
  EXPECT_FALSE(none.is_independent(Set{{0, 0}}));
  EXPECT_FALSE(none.is_independent(Set{{2, 1}}));

  c.advertiser_caps = std::vector<std::uint32_t>{2, 1};
  const auto mat = advertiser_matroid(c, 4, 2);
  EXPECT_TRUE(mat.is_independent(Set{{0, 0}, {1, 0}}));
  EXPECT_FALSE(mat.is_independent(Set{{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_TRUE(mat.is_independent(Set{{0, 0}, {0, 1}}));

  const auto uncapped = ConstraintSystem::uniform(4, 1, 10);
  EXPECT_THROW(advertiser_matroid(uncapped, 4, 2), ConfigError);
}

TEST(IsFeasible, Examples) {
  auto c = ConstraintSystem::uniform(3, 1, 2);
  EXPECT_TRUE(is_feasible(c, Allocation(3, 2)));
  c.exposure_bounds[1] = 0;
  Allocation one(3, 2);
  one.insert({1, 0});
  EXPECT_FALSE(is_feasible(c, one));
  Allocation three(3, 2);
  three.insert({0, 0});
  three.insert({2, 1});
  three.insert({2, 0});
  c.exposure_bounds = {2, 2, 2};
  EXPECT_FALSE(is_feasible(c, three));
}

TEST(ExchangeProperty, KnownCases) {
  const auto c = ConstraintSystem::uniform(3, 1, 2, std::vector<std::uint32_t>{1, 1});
  EXPECT_TRUE(verify_exchange_property(exposure_matroid(c, 3, 2)));
  EXPECT_TRUE(verify_exchange_property(advertiser_matroid(c, 3, 2)));
  const FunctionMatroid broken(3, 2,
                               [](std::span<const GroundElement> s) { return s.size() != 2; });
  EXPECT_FALSE(verify_exchange_property(broken));
}

TEST(ExchangeProperty, NonMatroidIntersectionIsRejected) {
  // Both constraint families together are generally not a matroid.
  const auto c = ConstraintSystem::uniform(2, 1, 4, std::vector<std::uint32_t>{1, 1});
  const auto e = exposure_matroid(c, 2, 2);
  const auto a = advertiser_matroid(c, 2, 2);
  const FunctionMatroid both(2, 2, [&](std::span<const GroundElement> s) {
    return e.is_independent(s) && a.is_independent(s);
  });
  // {(0,0)} and {(0,1),(1,0)}: neither element of the larger set extends the smaller.
  EXPECT_TRUE(both.is_independent(Set{{0, 1}, {1, 0}}));
  EXPECT_FALSE(both.is_independent(Set{{0, 0}, {0, 1}}));
  EXPECT_FALSE(both.is_independent(Set{{0, 0}, {1, 0}}));
  EXPECT_FALSE(verify_exchange_property(both));
}

TEST(ExchangeProperty, RejectsLargeGround) {
  const auto c = ConstraintSystem::uniform(8, 1, 3);
  EXPECT_THROW(verify_exchange_property(exposure_matroid(c, 8, 2)), CapacityError);
}

TEST(Intersection, EqualsIsFeasibleExhaustively) {
  Engine engine = make_engine(3, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t m = 1 + trial % 2;
    const auto c = random_constraints(n, m, engine, trial % 3 != 0);
    const auto e = exposure_matroid(c, n, m);
    const std::size_t ground = n * m;
    for (std::uint32_t mask = 0; mask < (1u << ground); ++mask) {
      Set s;
      for (std::size_t i = 0; i < ground; ++i) {
        if (mask & (1u << i)) s.push_back(e.element_at(i));
      }
      bool independent = e.is_independent(s);
      if (c.advertiser_caps)
        independent = independent && advertiser_matroid(c, n, m).is_independent(s);
      const auto alloc = testing::to_allocation(n, m, s);
      EXPECT_EQ(independent, is_feasible(c, alloc));
      EXPECT_EQ(independent, testing::feasible_by_counting(c, n, m, s));
    }
  }
}

TEST(Tracker, PrefixesStayFeasible) {
  Engine engine = make_engine(4, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6, m = 3;
    const auto c = random_constraints(n, m, engine, trial % 2 == 0);
    FeasibilityTracker tracker(c, n, m);
    const auto e = exposure_matroid(c, n, m);
    Allocation alloc(n, m);
    std::vector<std::size_t> order(n * m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), engine);
    for (std::size_t i : order) {
      const GroundElement g = e.element_at(i);
      auto with = alloc.elements();
      with.push_back(g);
      EXPECT_EQ(tracker.can_add(g), testing::feasible_by_counting(c, n, m, with));
      if (tracker.can_add(g)) {
        tracker.add(g);
        alloc.insert(g);
        ASSERT_TRUE(is_feasible(c, alloc));
      }
    }
    EXPECT_EQ(tracker.size(), alloc.size());
  }
}

TEST(PartitionState, CountsMatchOracle) {
  const auto c = ConstraintSystem::uniform(3, 2, 3);
  const auto mat = exposure_matroid(c, 3, 2);
  auto st = mat.make_state();
  EXPECT_TRUE(st.can_add({0, 0}));
  st.add({0, 0});
  st.add({0, 1});
  EXPECT_FALSE(st.can_add({0, 2}));
  st.add({1, 0});
  EXPECT_FALSE(st.can_add({2, 0}));
  st.remove({0, 1});
  EXPECT_TRUE(st.can_add({2, 0}));
  EXPECT_EQ(st.size(), 2u);
}

TEST(AllocationCsv, RoundTripWithIds) {
  const auto g = load_edge_list("10 20\n20 30\n", true);
  Allocation a(3, 2);
  a.insert({2, 0});
  a.insert({0, 1});
  a.insert({1, 0});
  std::ostringstream out;
  write_allocation_csv(out, a, &g);
  EXPECT_EQ(out.str(), "node,advertiser\n20,0\n30,0\n10,1\n");
  EXPECT_EQ(read_allocation_csv(out.str(), 3, 2, &g), a);
  EXPECT_THROW(read_allocation_csv("node,advertiser\n99,0\n", 3, 2, &g), ParseError);
  EXPECT_THROW(read_allocation_csv("node,advertiser\n10,5\n", 3, 2, &g), ParseError);
}

TEST(ConstraintSystem, Validation) {
  auto c = ConstraintSystem::uniform(3, 1, 2);
  EXPECT_NO_THROW(c.validate(3, 2));
  EXPECT_THROW(c.validate(4, 2), ConfigError);
  c.advertiser_caps = std::vector<std::uint32_t>{1};
  EXPECT_THROW(c.validate(3, 2), ConfigError);
}

}  // namespace
}  // namespace coseed

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

#include "coseed/config.hpp"

#include <gtest/gtest.h>

namespace coseed {
namespace {

TEST(InstanceConfig, ParsesAllKeys) {
  const auto cfg = parse_instance_config(R"({
    "budgets": [10, 20.5],
    "prices": [1, 2],
    "seed_caps": [3, 4],
    "exposure_bound": 2,
    "total_seeds": 5,
    "beta": 0.25
  })");
  const auto profiles = cfg.profiles(2);
  EXPECT_EQ(profiles[1].budget, 20.5);
  EXPECT_EQ(profiles[1].price, 2.0);
  const auto c = cfg.constraints(4, 2);
  EXPECT_EQ(c.exposure_bounds, (std::vector<std::uint32_t>{2, 2, 2, 2}));
  EXPECT_EQ(c.total_cap, 5u);
  EXPECT_EQ(*c.advertiser_caps, (std::vector<std::uint32_t>{3, 4}));
  EXPECT_EQ(cfg.beta, 0.25);
}

TEST(InstanceConfig, DefaultsAndDerivedTotal) {
  const auto cfg = parse_instance_config(R"({"seed_caps": [2, 3]})");
  EXPECT_EQ(cfg.constraints(3, 2).total_cap, 5u);
  const auto profiles = cfg.profiles(2);
  EXPECT_EQ(profiles[0].budget, kUnlimitedBudget);
  EXPECT_EQ(profiles[0].price, 1.0);
  EXPECT_THROW(parse_instance_config("{}").constraints(3, 2), ConfigError);
}

TEST(InstanceConfig, Rejections) {
  EXPECT_THROW(parse_instance_config(R"({"budget": [1]})"), ConfigError);
  EXPECT_THROW(parse_instance_config(R"({"beta": 2})"), ConfigError);
  EXPECT_THROW(parse_instance_config(R"({"total_seeds": -1})"), ConfigError);
  EXPECT_THROW(parse_instance_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_instance_config("{"), ConfigError);
  EXPECT_THROW(parse_instance_config(R"({"budgets": [1]})").profiles(2), ConfigError);
  EXPECT_THROW(parse_instance_config(R"({"budgets": [-1]})").profiles(1), ConfigError);
  EXPECT_THROW(
      parse_instance_config(R"({"exposure_bound": [1, 2], "total_seeds": 1})").constraints(3, 1),
      ConfigError);
  EXPECT_THROW(load_instance_config("/nonexistent/instance.json"), ConfigError);
}

}  // namespace
}  // namespace coseed

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

// Advertiser profiles and constraints from a JSON document:
//
//   {"budgets": [100, 100], "prices": [1, 1], "seed_caps": [5, 5],
//    "exposure_bound": 1, "total_seeds": 10, "beta": 0.5}
//
// Every key is optional. Missing budgets mean unlimited budgets, missing
// prices mean 1, missing seed_caps disable the per-advertiser caps,
// exposure_bound (a scalar or one entry per node) defaults to 1, and
// total_seeds defaults to the sum of the seed caps when those are given.

#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "coseed/allocation.hpp"
#include "coseed/payoff.hpp"

namespace coseed {

struct InstanceConfig {
  std::optional<std::vector<double>> budgets;
  std::optional<std::vector<double>> prices;
  std::optional<std::vector<std::uint32_t>> seed_caps;
  std::vector<std::uint32_t> exposure_bound{1};  // one entry broadcasts to every node
  std::optional<std::size_t> total_seeds;
  double beta = 0.0;

  // ConfigError when list lengths do not match (n, m) or K is undetermined.
  std::vector<AdvertiserProfile> profiles(std::size_t advertiser_count) const;
  ConstraintSystem constraints(std::size_t node_count, std::size_t advertiser_count) const;
};

// ConfigError on malformed JSON, unknown keys or wrongly typed values.
InstanceConfig parse_instance_config(std::string_view json_text);
InstanceConfig load_instance_config(const std::filesystem::path& path);

}  // namespace coseed

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

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "json.hpp"

namespace coseed {

namespace {

using Json = nlohmann::json;

template <typename T>
std::vector<T> number_list(const Json& value, const char* key) {
  if (!value.is_array()) throw ConfigError(std::string(key) + " must be a list");
  std::vector<T> out;
  for (const auto& item : value) {
    if (!item.is_number()) throw ConfigError(std::string(key) + " entries must be numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!item.is_number_unsigned() && !(item.is_number_integer() && item.get<long long>() >= 0)) {
        throw ConfigError(std::string(key) + " entries must be non-negative integers");
      }
    }
    out.push_back(item.get<T>());
  }
  return out;
}

}  // namespace

InstanceConfig parse_instance_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("instance config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("instance config must be a JSON object");
  InstanceConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    const Json& value = it.value();
    if (key == "budgets") {
      cfg.budgets = number_list<double>(value, "budgets");
    } else if (key == "prices") {
      cfg.prices = number_list<double>(value, "prices");
    } else if (key == "seed_caps") {
      cfg.seed_caps = number_list<std::uint32_t>(value, "seed_caps");
    } else if (key == "exposure_bound") {
      if (value.is_array()) {
        cfg.exposure_bound = number_list<std::uint32_t>(value, "exposure_bound");
      } else if (value.is_number_unsigned()) {
        cfg.exposure_bound = {value.get<std::uint32_t>()};
      } else {
        throw ConfigError("exposure_bound must be a non-negative integer or a list");
      }
    } else if (key == "total_seeds") {
      if (!value.is_number_unsigned())
        throw ConfigError("total_seeds must be a non-negative integer");
      cfg.total_seeds = value.get<std::size_t>();
    } else if (key == "beta") {
      if (!value.is_number()) throw ConfigError("beta must be a number");
      cfg.beta = value.get<double>();
      if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
    } else {
      throw ConfigError("unknown instance config key \"" + key + "\"");
    }
  }
  return cfg;
}

InstanceConfig load_instance_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_config(buf.str());
}

std::vector<AdvertiserProfile> InstanceConfig::profiles(std::size_t advertiser_count) const {
  auto check = [&](std::size_t size, const char* key) {
    if (size != advertiser_count) {
      throw ConfigError(std::string(key) + " has " + std::to_string(size) + " entries for " +
                        std::to_string(advertiser_count) + " advertisers");
    }
  };
  if (budgets) check(budgets->size(), "budgets");
  if (prices) check(prices->size(), "prices");
  if (seed_caps) check(seed_caps->size(), "seed_caps");
  std::vector<AdvertiserProfile> out(advertiser_count);
  for (std::size_t j = 0; j < advertiser_count; ++j) {
    if (budgets) out[j].budget = (*budgets)[j];
    if (prices) out[j].price = (*prices)[j];
    if (seed_caps) out[j].seed_cap = (*seed_caps)[j];
    try {
      out[j].validate();
    } catch (const DomainError& e) {
      throw ConfigError("advertiser " + std::to_string(j) + ": " + e.what());
    }
  }
  return out;
}

ConstraintSystem InstanceConfig::constraints(std::size_t node_count,
                                             std::size_t advertiser_count) const {
  ConstraintSystem c;
  if (exposure_bound.size() == 1) {
    c.exposure_bounds.assign(node_count, exposure_bound[0]);
  } else if (exposure_bound.size() == node_count) {
    c.exposure_bounds = exposure_bound;
  } else {
    throw ConfigError("exposure_bound has " + std::to_string(exposure_bound.size()) +
                      " entries for " + std::to_string(node_count) + " nodes");
  }
  if (seed_caps) {
    if (seed_caps->size() != advertiser_count) {
      throw ConfigError("seed_caps has " + std::to_string(seed_caps->size()) + " entries for " +
                        std::to_string(advertiser_count) + " advertisers");
    }
    c.advertiser_caps = *seed_caps;
  }
  if (total_seeds) {
    c.total_cap = *total_seeds;
  } else if (seed_caps) {
    c.total_cap = std::accumulate(seed_caps->begin(), seed_caps->end(), std::size_t{0});
  } else {
    throw ConfigError("total_seeds is required when seed_caps are absent");
  }
  return c;
}

}  // namespace coseed

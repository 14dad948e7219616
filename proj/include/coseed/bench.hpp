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

// Experiment drivers. Each run is reproducible from its options and master
// seed; tables carry a "# config_hash=... seed=..." line ahead of the header.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coseed/graph.hpp"
#include "coseed/payoff.hpp"

namespace coseed::bench {

class CsvTable {
 public:
  CsvTable(std::vector<std::string> columns, std::string config, std::uint64_t seed);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string config_hash() const;
  void write(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::string config_;
  std::uint64_t seed_;
};

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

// 64-bit FNV-1a, hex.
std::string fnv1a_hex(const std::string& text);

// Hash of the node count, direction and arc list.
std::string graph_digest(const BaseGraph& graph);

// One instance plus its RR collections. Advertisers with identical networks
// share a single collection.
struct Scenario {
  ProblemInstance instance;
  CollectionSet collections;
  double rr_seconds = 0.0;
};

struct ScenarioSpec {
  std::size_t advertisers = 3;
  ReplicationMode mode = ReplicationMode::independent(0.4);
  std::size_t total_seeds = 30;
  std::uint32_t exposure_bound = 1;
  double budget = kUnlimitedBudget;  // same for every advertiser
  double price = 1.0;
  std::size_t rho_multiplier = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

Scenario make_scenario(std::shared_ptr<const BaseGraph> graph, const ScenarioSpec& spec);

// ---- RR sample size calibration -------------------------------------------

struct CalibrationOptions {
  std::size_t advertisers = 3;
  double lambda_max = 0.4;
  std::vector<std::size_t> multipliers{1, 2, 5, 10, 20, 50};
  std::size_t reference_multiplier = 200;  // estimation reference
  std::size_t quality_multiplier = 100;    // greedy-quality reference
  std::size_t repetitions = 100;
  std::size_t quality_repetitions = 10;
  std::size_t seeds_per_advertiser = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct CalibrationRow {
  std::size_t multiplier = 0;
  double mean_abs_error = 0.0;  // sum_j |ref_j - est_j| / sum_j ref_j, averaged over redraws
  double normalized_std = 0.0;  // std of the total estimate over its mean
  double greedy_quality = 0.0;  // greedy payoff relative to the quality reference
};

struct CalibrationResult {
  std::vector<CalibrationRow> rows;
  double reference_payoff = 0.0;
  CsvTable table() const;
  CalibrationOptions options;
  std::string graph_digest;
};

// Seed sets come from greedy on quality_multiplier * n sets per advertiser
// with unlimited budgets, r_v = 1 and K = m * seeds_per_advertiser, and are
// scored on an independent reference_multiplier * n collection. Payoff is the
// unbudgeted reach.
CalibrationResult run_calibration(std::shared_ptr<const BaseGraph> graph,
                                  const CalibrationOptions& options);

// ---- payoff against total seeds -------------------------------------------

inline const std::vector<std::string> kAllAlgorithms{"greedy", "lp-round", "max-degree", "eigen"};

struct PayoffVsKOptions {
  std::size_t advertisers = 3;
  double lambda_max = 0.4;
  std::vector<std::size_t> k_values{10, 20, 30, 40, 50};
  std::vector<std::string> algorithms = kAllAlgorithms;
  std::size_t rho_multiplier = 10;
  double budget = kUnlimitedBudget;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct PayoffVsKRow {
  std::size_t k = 0;
  std::string algorithm;
  double payoff = 0.0;
  double opt_lp = 0.0;  // NaN when the LP was not solved
};

struct PayoffVsKResult {
  std::vector<PayoffVsKRow> rows;
  PayoffVsKOptions options;
  std::string graph_digest;
  CsvTable table() const;
};

PayoffVsKResult run_payoff_vs_k(std::shared_ptr<const BaseGraph> graph,
                                const PayoffVsKOptions& options);

// ---- payoff against number of advertisers ---------------------------------

struct PayoffVsMOptions {
  double lambda_max = 0.4;
  std::vector<std::size_t> m_values{1, 2, 5, 10, 20};
  std::vector<std::string> algorithms{"greedy"};
  std::size_t seeds_per_advertiser = 10;
  // 0 means r_v = m (no competition for nodes).
  std::uint32_t exposure_bound = 1;
  std::size_t rho_multiplier = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct PayoffVsMRow {
  std::size_t m = 0;
  std::string algorithm;
  double total_payoff = 0.0;
  double per_advertiser = 0.0;
};

struct PayoffVsMResult {
  std::vector<PayoffVsMRow> rows;
  PayoffVsMOptions options;
  std::string graph_digest;
  CsvTable table() const;
};

// Identical networks for every advertiser, K = seeds_per_advertiser * m.
PayoffVsMResult run_payoff_vs_m(std::shared_ptr<const BaseGraph> graph,
                                const PayoffVsMOptions& options);

// ---- competition between similar networks ---------------------------------

struct CompetitionOptions {
  std::size_t advertisers = 20;
  std::size_t total_seeds = 200;
  double lambda_max = 0.4;
  std::vector<std::uint32_t> s_values{0, 25, 50, 100, 200};
  std::size_t rho_multiplier = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct CompetitionRow {
  std::uint32_t s = 0;
  double payoff = 0.0;
};

struct CompetitionResult {
  std::vector<CompetitionRow> rows;
  CompetitionOptions options;
  std::string graph_digest;
  CsvTable table() const;
  // payoff at the largest s over payoff at s = 0; NaN if either is missing.
  double ratio() const;
};

CompetitionResult run_competition(std::shared_ptr<const BaseGraph> graph,
                                  const CompetitionOptions& options);

// ---- relative payoff against edge probability -----------------------------

struct RelativePayoffOptions {
  std::size_t advertisers = 20;
  std::vector<double> p_values{0.001, 0.005, 0.01, 0.02, 0.04, 0.06, 0.1, 0.2, 0.3, 0.5, 0.9};
  std::size_t seeds_per_advertiser = 10;
  double budget_fraction = 0.2;  // B_j = fraction * n
  std::size_t rho_multiplier = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct RelativePayoffRow {
  double p = 0.0;
  double payoff_single = 0.0;
  double payoff_many = 0.0;
  double alpha = 0.0;
};

struct RelativePayoffResult {
  std::vector<RelativePayoffRow> rows;
  RelativePayoffOptions options;
  std::string graph_digest;
  CsvTable table() const;
  // Index of the smallest alpha; interior when neither first nor last.
  std::size_t argmin() const;
};

RelativePayoffResult run_relative_payoff(std::shared_ptr<const BaseGraph> graph,
                                         const RelativePayoffOptions& options);

// ---- scalability -----------------------------------------------------------

struct ScalabilityOptions {
  std::vector<std::size_t> m_values{1, 5};
  std::vector<unsigned> thread_counts{1, 2, 4};
  double lambda_max = 0.4;
  std::size_t seeds_per_advertiser = 10;
  std::size_t rho_multiplier = 10;
  std::uint64_t seed = 1;
};

struct ScalabilityRow {
  std::size_t m = 0;
  unsigned threads = 1;
  double rr_build_seconds = 0.0;
  double total_seconds = 0.0;
  std::string allocation_hash;
  bool matches_sequential = true;
};

struct ScalabilityResult {
  std::vector<ScalabilityRow> rows;
  ScalabilityOptions options;
  std::string graph_digest;
  CsvTable table() const;
};

ScalabilityResult run_scalability(std::shared_ptr<const BaseGraph> graph,
                                  const ScalabilityOptions& options);

}  // namespace coseed::bench

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

#include "coseed/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "coseed/greedy.hpp"
#include "coseed/heuristics.hpp"
#include "coseed/lp.hpp"
#include "coseed/rng.hpp"
#include "coseed/rounding.hpp"
#include "coseed/rrsets.hpp"

namespace coseed::bench {
namespace {

// Stream tags for derive_seed so that unrelated draws never share an engine.
enum Stream : std::uint64_t {
  kNetworkStream = 1,
  kSampleStream = 2,
  kRoundingStream = 3,
  kReferenceStream = 4,
  kQualityStream = 5,
  kRedrawStream = 6,
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Builds a canonical "key=value;" description for the config hash.
class ConfigText {
 public:
  explicit ConfigText(std::string_view experiment) { text_ << experiment << ';'; }

  template <typename T>
  ConfigText& add(std::string_view key, const T& value) {
    text_ << key << '=' << value << ';';
    return *this;
  }
  ConfigText& add(std::string_view key, double value) {
    text_ << key << '=' << format_number(value) << ';';
    return *this;
  }
  template <typename T>
  ConfigText& add(std::string_view key, const std::vector<T>& values) {
    text_ << key << '=';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) text_ << ',';
      if constexpr (std::is_floating_point_v<T>) {
        text_ << format_number(values[i]);
      } else {
        text_ << values[i];
      }
    }
    text_ << ';';
    return *this;
  }
  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

std::string to_text(std::size_t v) { return std::to_string(v); }

CollectionSet sample_collections(const std::vector<InfluenceNetwork>& networks, bool shared,
                                 std::size_t count, std::uint64_t rng_seed, unsigned threads) {
  CollectionSet out;
  out.reserve(networks.size());
  for (std::size_t j = 0; j < networks.size(); ++j) {
    if (shared && j > 0) {
      out.push_back(out.front());
      continue;
    }
    out.push_back(std::make_shared<const RRCollection>(sample_rr_sets(
        networks[j], static_cast<AdvertiserId>(j), count, derive_seed(rng_seed, j), threads)));
  }
  return out;
}

bool shares_networks(const ReplicationMode& mode) {
  return mode.kind == ReplicationMode::Kind::kIdentical ||
         mode.kind == ReplicationMode::Kind::kUniform;
}

ProblemInstance build_instance(std::shared_ptr<const BaseGraph> graph,
                               std::vector<InfluenceNetwork> networks, std::size_t total_seeds,
                               std::uint32_t exposure_bound, double budget, double price) {
  ProblemInstance instance;
  const std::size_t n = graph->node_count();
  const std::size_t m = networks.size();
  instance.graph = std::move(graph);
  instance.networks = std::move(networks);
  instance.profiles.assign(m, AdvertiserProfile{budget, price, std::nullopt});
  instance.constraints = ConstraintSystem::uniform(n, exposure_bound, total_seeds);
  instance.validate();
  return instance;
}

// Unbudgeted sum of reach estimates for an allocation.
double total_reach(const Allocation& alloc, const CollectionSet& collections) {
  double total = 0.0;
  for (std::size_t j = 0; j < collections.size(); ++j) {
    const auto seeds = alloc.seeds(static_cast<AdvertiserId>(j));
    total += estimate_reach(*collections[j], seeds);
  }
  return total;
}

std::string allocation_hash(const Allocation& alloc) {
  std::ostringstream text;
  write_allocation_csv(text, alloc);
  return fnv1a_hex(text.str());
}

Allocation run_algorithm(const std::string& name, const Scenario& scenario, std::uint64_t rng_seed,
                         double* opt_lp) {
  if (name == "greedy") {
    const RRReachEstimator estimator(scenario.collections);
    return greedy_allocate(scenario.instance, estimator).allocation;
  }
  if (name == "lp-round") {
    auto result = lp_round_allocate(scenario.instance, scenario.collections,
                                    derive_seed(rng_seed, kRoundingStream));
    if (opt_lp) *opt_lp = result.opt_lp;
    return std::move(result.allocation);
  }
  if (name == "max-degree") return max_degree_allocate(scenario.instance);
  if (name == "eigen") return eigen_centrality_allocate(scenario.instance);
  throw ConfigError("unknown algorithm '" + name + "'");
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - mu) * (v - mu);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

}  // namespace

// ---- CSV --------------------------------------------------------------------

std::string graph_digest(const BaseGraph& graph) {
  std::ostringstream text;
  text << graph.node_count() << ';' << (graph.directed() ? 1 : 0) << ';';
  for (const Arc& a : graph.arcs()) text << a.from << ',' << a.to << ';';
  return fnv1a_hex(text.str());
}

CsvTable::CsvTable(std::vector<std::string> columns, std::string config, std::uint64_t seed)
    : columns_(std::move(columns)), config_(std::move(config)), seed_(seed) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw ContractViolation("row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::config_hash() const { return fnv1a_hex(config_); }

void CsvTable::write(std::ostream& out) const {
  out << "# config_hash=" << config_hash() << " seed=" << seed_ << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- scenarios --------------------------------------------------------------

Scenario make_scenario(std::shared_ptr<const BaseGraph> graph, const ScenarioSpec& spec) {
  if (!graph) throw ConfigError("scenario needs a graph");
  if (spec.advertisers == 0) throw ConfigError("scenario needs at least one advertiser");
  if (spec.rho_multiplier == 0) throw ConfigError("rho multiplier must be positive");
  const std::size_t n = graph->node_count();
  auto networks = replicate_for_advertisers(*graph, spec.advertisers, spec.mode,
                                            derive_seed(spec.seed, kNetworkStream));
  Scenario scenario;
  const auto start = Clock::now();
  scenario.collections =
      sample_collections(networks, shares_networks(spec.mode), spec.rho_multiplier * n,
                         derive_seed(spec.seed, kSampleStream), spec.threads);
  scenario.rr_seconds = seconds_since(start);
  scenario.instance = build_instance(std::move(graph), std::move(networks), spec.total_seeds,
                                     spec.exposure_bound, spec.budget, spec.price);
  return scenario;
}

// ---- calibration ------------------------------------------------------------

CsvTable CalibrationResult::table() const {
  const auto& o = options;
  ConfigText config("calibration");
  config.add("graph", graph_digest)
      .add("advertisers", o.advertisers)
      .add("lambda_max", o.lambda_max)
      .add("multipliers", o.multipliers)
      .add("reference_multiplier", o.reference_multiplier)
      .add("quality_multiplier", o.quality_multiplier)
      .add("repetitions", o.repetitions)
      .add("quality_repetitions", o.quality_repetitions)
      .add("seeds_per_advertiser", o.seeds_per_advertiser);
  CsvTable t({"rho_multiplier", "mean_abs_error", "normalized_std", "greedy_quality"}, config.str(),
             o.seed);
  for (const auto& r : rows) {
    t.add_row({to_text(r.multiplier), format_number(r.mean_abs_error),
               format_number(r.normalized_std), format_number(r.greedy_quality)});
  }
  return t;
}

CalibrationResult run_calibration(std::shared_ptr<const BaseGraph> graph,
                                  const CalibrationOptions& options) {
  if (!graph) throw ConfigError("calibration needs a graph");
  if (options.repetitions < 2) throw ConfigError("calibration needs at least two repetitions");
  const std::size_t n = graph->node_count();
  const std::size_t m = options.advertisers;
  auto networks =
      replicate_for_advertisers(*graph, m, ReplicationMode::independent(options.lambda_max),
                                derive_seed(options.seed, kNetworkStream));
  const auto instance =
      build_instance(graph, networks, m * options.seeds_per_advertiser, 1, kUnlimitedBudget, 1.0);

  // Seeds are chosen on one collection and scored on an independent one, so
  // the reference values carry no selection bias.
  const auto quality_ref =
      sample_collections(networks, false, options.quality_multiplier * n,
                         derive_seed(options.seed, kQualityStream), options.threads);
  const auto reference =
      sample_collections(networks, false, options.reference_multiplier * n,
                         derive_seed(options.seed, kReferenceStream), options.threads);
  const Allocation ref_alloc = greedy_allocate(instance, RRReachEstimator(quality_ref)).allocation;

  std::vector<double> ref_reach(m);
  double ref_total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    ref_reach[j] = estimate_reach(*reference[j], ref_alloc.seeds(static_cast<AdvertiserId>(j)));
    ref_total += ref_reach[j];
  }
  if (ref_total <= 0.0) throw DomainError("calibration reference reach is zero");

  CalibrationResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  result.reference_payoff = ref_total;
  const std::uint64_t redraw_root = derive_seed(options.seed, kRedrawStream);
  for (std::size_t mult : options.multipliers) {
    if (mult == 0) throw ConfigError("rho multiplier must be positive");
    std::vector<double> errors;
    std::vector<double> totals;
    std::vector<double> quality;
    const std::uint64_t mult_seed = derive_seed(redraw_root, mult);
    for (std::size_t r = 0; r < options.repetitions; ++r) {
      const auto redraw =
          sample_collections(networks, false, mult * n, derive_seed(mult_seed, r), options.threads);
      double abs_err = 0.0;
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double est =
            estimate_reach(*redraw[j], ref_alloc.seeds(static_cast<AdvertiserId>(j)));
        abs_err += std::abs(est - ref_reach[j]);
        total += est;
      }
      errors.push_back(abs_err / ref_total);
      totals.push_back(total);
      if (r < options.quality_repetitions) {
        const auto alloc = greedy_allocate(instance, RRReachEstimator(redraw)).allocation;
        quality.push_back(total_reach(alloc, reference) / ref_total);
      }
    }
    CalibrationRow row;
    row.multiplier = mult;
    row.mean_abs_error = mean(errors);
    row.normalized_std = sample_std(totals) / mean(totals);
    row.greedy_quality = mean(quality);
    result.rows.push_back(row);
  }
  return result;
}

// ---- payoff vs K --------------------------------------------------------------

CsvTable PayoffVsKResult::table() const {
  const auto& o = options;
  ConfigText config("payoff_vs_k");
  config.add("graph", graph_digest)
      .add("advertisers", o.advertisers)
      .add("lambda_max", o.lambda_max)
      .add("k_values", o.k_values)
      .add("algorithms", o.algorithms)
      .add("rho_multiplier", o.rho_multiplier)
      .add("budget", o.budget);
  CsvTable t({"k", "algorithm", "payoff", "opt_lp"}, config.str(), o.seed);
  for (const auto& r : rows) {
    t.add_row({to_text(r.k), r.algorithm, format_number(r.payoff), format_number(r.opt_lp)});
  }
  return t;
}

PayoffVsKResult run_payoff_vs_k(std::shared_ptr<const BaseGraph> graph,
                                const PayoffVsKOptions& options) {
  ScenarioSpec spec;
  spec.advertisers = options.advertisers;
  spec.mode = ReplicationMode::independent(options.lambda_max);
  spec.budget = options.budget;
  spec.rho_multiplier = options.rho_multiplier;
  spec.seed = options.seed;
  spec.threads = options.threads;
  spec.total_seeds = options.k_values.empty() ? 1 : options.k_values.front();
  Scenario scenario = make_scenario(graph, spec);
  const RRReachEstimator estimator(scenario.collections);

  PayoffVsKResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  for (std::size_t k : options.k_values) {
    scenario.instance.constraints.total_cap = k;
    double opt_lp = std::numeric_limits<double>::quiet_NaN();
    std::vector<PayoffVsKRow> block;
    for (const auto& name : options.algorithms) {
      const Allocation alloc = run_algorithm(name, scenario, options.seed, &opt_lp);
      block.push_back({k, name, objective_revenue(scenario.instance, alloc, estimator), 0.0});
    }
    for (auto& row : block) {
      row.opt_lp = opt_lp;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

// ---- payoff vs m --------------------------------------------------------------

CsvTable PayoffVsMResult::table() const {
  const auto& o = options;
  ConfigText config("payoff_vs_m");
  config.add("graph", graph_digest)
      .add("lambda_max", o.lambda_max)
      .add("m_values", o.m_values)
      .add("algorithms", o.algorithms)
      .add("seeds_per_advertiser", o.seeds_per_advertiser)
      .add("exposure_bound", o.exposure_bound)
      .add("rho_multiplier", o.rho_multiplier);
  CsvTable t({"m", "algorithm", "total_payoff", "per_advertiser_payoff"}, config.str(), o.seed);
  for (const auto& r : rows) {
    t.add_row({to_text(r.m), r.algorithm, format_number(r.total_payoff),
               format_number(r.per_advertiser)});
  }
  return t;
}

PayoffVsMResult run_payoff_vs_m(std::shared_ptr<const BaseGraph> graph,
                                const PayoffVsMOptions& options) {
  PayoffVsMResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  for (std::size_t m : options.m_values) {
    if (m == 0) throw ConfigError("advertiser count must be positive");
    ScenarioSpec spec;
    spec.advertisers = m;
    spec.mode = ReplicationMode::identical(options.lambda_max);
    spec.total_seeds = options.seeds_per_advertiser * m;
    spec.exposure_bound =
        options.exposure_bound == 0 ? static_cast<std::uint32_t>(m) : options.exposure_bound;
    spec.rho_multiplier = options.rho_multiplier;
    spec.seed = options.seed;
    spec.threads = options.threads;
    const Scenario scenario = make_scenario(graph, spec);
    const RRReachEstimator estimator(scenario.collections);
    for (const auto& name : options.algorithms) {
      const Allocation alloc = run_algorithm(name, scenario, options.seed, nullptr);
      const double total = objective_revenue(scenario.instance, alloc, estimator);
      result.rows.push_back({m, name, total, total / static_cast<double>(m)});
    }
  }
  return result;
}

// ---- competition --------------------------------------------------------------

CsvTable CompetitionResult::table() const {
  const auto& o = options;
  ConfigText config("competition");
  config.add("graph", graph_digest)
      .add("advertisers", o.advertisers)
      .add("total_seeds", o.total_seeds)
      .add("lambda_max", o.lambda_max)
      .add("s_values", o.s_values)
      .add("rho_multiplier", o.rho_multiplier);
  CsvTable t({"s", "payoff"}, config.str(), o.seed);
  for (const auto& r : rows) t.add_row({std::to_string(r.s), format_number(r.payoff)});
  return t;
}

double CompetitionResult::ratio() const {
  const CompetitionRow* base = nullptr;
  const CompetitionRow* top = nullptr;
  for (const auto& r : rows) {
    if (r.s == 0) base = &r;
    if (!top || r.s > top->s) top = &r;
  }
  if (!base || !top || base->payoff <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return top->payoff / base->payoff;
}

CompetitionResult run_competition(std::shared_ptr<const BaseGraph> graph,
                                  const CompetitionOptions& options) {
  CompetitionResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  for (std::uint32_t s : options.s_values) {
    ScenarioSpec spec;
    spec.advertisers = options.advertisers;
    spec.mode = ReplicationMode::swapped(options.lambda_max, s);
    spec.total_seeds = options.total_seeds;
    spec.rho_multiplier = options.rho_multiplier;
    spec.seed = options.seed;
    spec.threads = options.threads;
    const Scenario scenario = make_scenario(graph, spec);
    const RRReachEstimator estimator(scenario.collections);
    const auto greedy = greedy_allocate(scenario.instance, estimator);
    result.rows.push_back({s, greedy.objective});
  }
  return result;
}

// ---- relative payoff ------------------------------------------------------------

CsvTable RelativePayoffResult::table() const {
  const auto& o = options;
  ConfigText config("relative_payoff");
  config.add("graph", graph_digest)
      .add("advertisers", o.advertisers)
      .add("p_values", o.p_values)
      .add("seeds_per_advertiser", o.seeds_per_advertiser)
      .add("budget_fraction", o.budget_fraction)
      .add("rho_multiplier", o.rho_multiplier);
  CsvTable t({"p", "payoff_single", "payoff_many", "alpha"}, config.str(), o.seed);
  for (const auto& r : rows) {
    t.add_row({format_number(r.p), format_number(r.payoff_single), format_number(r.payoff_many),
               format_number(r.alpha)});
  }
  return t;
}

std::size_t RelativePayoffResult::argmin() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].alpha < rows[best].alpha) best = i;
  }
  return best;
}

RelativePayoffResult run_relative_payoff(std::shared_ptr<const BaseGraph> graph,
                                         const RelativePayoffOptions& options) {
  if (!graph) throw ConfigError("relative payoff needs a graph");
  const double budget = options.budget_fraction * static_cast<double>(graph->node_count());
  RelativePayoffResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  for (double p : options.p_values) {
    double payoff[2] = {0.0, 0.0};
    const std::size_t counts[2] = {1, options.advertisers};
    for (int which = 0; which < 2; ++which) {
      ScenarioSpec spec;
      spec.advertisers = counts[which];
      spec.mode = ReplicationMode::uniform(p);
      spec.total_seeds = options.seeds_per_advertiser * counts[which];
      spec.budget = budget;
      spec.rho_multiplier = options.rho_multiplier;
      spec.seed = options.seed;
      spec.threads = options.threads;
      const Scenario scenario = make_scenario(graph, spec);
      payoff[which] =
          greedy_allocate(scenario.instance, RRReachEstimator(scenario.collections)).objective;
    }
    RelativePayoffRow row;
    row.p = p;
    row.payoff_single = payoff[0];
    row.payoff_many = payoff[1];
    row.alpha = payoff[0] > 0.0 ? payoff[1] / payoff[0] : std::numeric_limits<double>::quiet_NaN();
    result.rows.push_back(row);
  }
  return result;
}

// ---- scalability ----------------------------------------------------------------

CsvTable ScalabilityResult::table() const {
  const auto& o = options;
  ConfigText config("scalability");
  config.add("graph", graph_digest)
      .add("m_values", o.m_values)
      .add("thread_counts", o.thread_counts)
      .add("lambda_max", o.lambda_max)
      .add("seeds_per_advertiser", o.seeds_per_advertiser)
      .add("rho_multiplier", o.rho_multiplier);
  CsvTable t({"m", "threads", "rr_build_seconds", "total_seconds", "allocation_hash",
              "matches_sequential"},
             config.str(), o.seed);
  for (const auto& r : rows) {
    t.add_row({to_text(r.m), std::to_string(r.threads), format_number(r.rr_build_seconds),
               format_number(r.total_seconds), r.allocation_hash,
               r.matches_sequential ? "1" : "0"});
  }
  return t;
}

ScalabilityResult run_scalability(std::shared_ptr<const BaseGraph> graph,
                                  const ScalabilityOptions& options) {
  ScalabilityResult result;
  result.options = options;
  result.graph_digest = bench::graph_digest(*graph);
  for (std::size_t m : options.m_values) {
    std::string sequential_hash;
    for (unsigned threads : options.thread_counts) {
      ScenarioSpec spec;
      spec.advertisers = m;
      spec.mode = ReplicationMode::independent(options.lambda_max);
      spec.total_seeds = options.seeds_per_advertiser * m;
      spec.rho_multiplier = options.rho_multiplier;
      spec.seed = options.seed;
      spec.threads = threads;
      const auto start = Clock::now();
      const Scenario scenario = make_scenario(graph, spec);
      const auto greedy =
          greedy_allocate(scenario.instance, RRReachEstimator(scenario.collections));
      ScalabilityRow row;
      row.m = m;
      row.threads = threads;
      row.rr_build_seconds = scenario.rr_seconds;
      row.total_seconds = seconds_since(start);
      row.allocation_hash = allocation_hash(greedy.allocation);
      if (threads == 1 || sequential_hash.empty()) {
        if (sequential_hash.empty() && threads != 1) {
          // No single-thread run came first; compute it for the comparison.
          ScenarioSpec seq = spec;
          seq.threads = 1;
          const Scenario base = make_scenario(graph, seq);
          sequential_hash = allocation_hash(
              greedy_allocate(base.instance, RRReachEstimator(base.collections)).allocation);
        } else if (sequential_hash.empty()) {
          sequential_hash = row.allocation_hash;
        }
      }
      row.matches_sequential = row.allocation_hash == sequential_hash;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace coseed::bench

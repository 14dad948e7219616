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

// coseed: command-line front end for seed allocation and the experiment
// harness. Common flags may also come from a TOML/INI file via --config.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coseed/allocation.hpp"
#include "coseed/bench.hpp"
#include "coseed/config.hpp"
#include "coseed/diffusion.hpp"
#include "coseed/generators.hpp"
#include "coseed/graph.hpp"
#include "coseed/greedy.hpp"
#include "coseed/heuristics.hpp"
#include "coseed/lp.hpp"
#include "coseed/payoff.hpp"
#include "coseed/rng.hpp"
#include "coseed/rounding.hpp"
#include "coseed/rrsets.hpp"

namespace {

using namespace coseed;

struct CommonFlags {
  std::string graph_path;
  bool directed = false;
  std::optional<std::size_t> m_flag;  // subcommand default when absent
  std::size_t m(std::size_t fallback = 3) const { return m_flag.value_or(fallback); }
  std::optional<std::size_t> total_seeds;
  std::uint32_t exposure_bound = 1;
  std::vector<double> budgets;
  std::vector<std::uint32_t> seed_caps;
  double beta = 0.0;
  std::size_t rho_mult = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string instance_config;

  // Synthetic graph used when --graph is absent.
  std::string generator = "ba";
  std::size_t nodes = 300;
  std::size_t attach = 3;
  double lambda_max = 0.4;
  std::string mode = "independent";
  double p = 0.1;
  std::uint32_t s = 0;
};

std::shared_ptr<const BaseGraph> make_graph(const CommonFlags& f) {
  if (!f.graph_path.empty()) {
    std::vector<std::string> warnings;
    auto g = load_edge_list_file(f.graph_path, f.directed, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return std::make_shared<const BaseGraph>(std::move(g));
  }
  const std::uint64_t gseed = derive_seed(f.seed, 0x67656eULL);
  if (f.generator == "ba")
    return std::make_shared<const BaseGraph>(barabasi_albert(f.nodes, f.attach, gseed));
  if (f.generator == "er") {
    return std::make_shared<const BaseGraph>(
        erdos_renyi(f.nodes, static_cast<double>(2 * f.attach), f.directed, gseed));
  }
  if (f.generator == "regular") {
    return std::make_shared<const BaseGraph>(random_regular(f.nodes, 2 * f.attach, gseed));
  }
  if (f.generator == "star")
    return std::make_shared<const BaseGraph>(star_graph(f.nodes - 1, f.directed));
  if (f.generator == "path") return std::make_shared<const BaseGraph>(path_graph(f.nodes));
  if (f.generator == "cycle") return std::make_shared<const BaseGraph>(cycle_graph(f.nodes));
  throw ConfigError("unknown generator '" + f.generator + "'");
}

ReplicationMode make_mode(const CommonFlags& f) {
  if (f.mode == "independent") return ReplicationMode::independent(f.lambda_max);
  if (f.mode == "identical") return ReplicationMode::identical(f.lambda_max);
  if (f.mode == "swapped") return ReplicationMode::swapped(f.lambda_max, f.s);
  if (f.mode == "uniform") return ReplicationMode::uniform(f.p);
  throw ConfigError("unknown mode '" + f.mode + "'");
}

// Problem instance from flags, optionally overridden by a JSON instance file.
// The file's beta replaces --beta.
ProblemInstance make_instance(CommonFlags& f, std::shared_ptr<const BaseGraph> graph) {
  InstanceConfig config;
  if (!f.instance_config.empty()) {
    config = load_instance_config(f.instance_config);
    f.beta = config.beta;
  } else {
    if (!f.budgets.empty()) {
      config.budgets = f.budgets.size() == 1 ? std::vector<double>(f.m(), f.budgets[0]) : f.budgets;
    }
    if (!f.seed_caps.empty()) {
      config.seed_caps =
          f.seed_caps.size() == 1 ? std::vector<std::uint32_t>(f.m(), f.seed_caps[0]) : f.seed_caps;
    }
    config.exposure_bound = {f.exposure_bound};
    config.total_seeds = f.total_seeds;
    config.beta = f.beta;
  }
  ProblemInstance instance;
  const std::size_t n = graph->node_count();
  instance.networks =
      replicate_for_advertisers(*graph, f.m(), make_mode(f), derive_seed(f.seed, 1));
  instance.graph = std::move(graph);
  instance.profiles = config.profiles(f.m());
  instance.constraints = config.constraints(n, f.m());
  instance.validate();
  return instance;
}

CollectionSet make_collections(const CommonFlags& f, const ProblemInstance& instance) {
  CollectionSet out;
  const std::size_t count = f.rho_mult * instance.node_count();
  const bool shared = f.mode == "identical" || f.mode == "uniform";
  for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
    if (shared && j > 0) {
      out.push_back(out.front());
      continue;
    }
    out.push_back(std::make_shared<const RRCollection>(
        sample_rr_sets(instance.networks[j], static_cast<AdvertiserId>(j), count,
                       derive_seed(derive_seed(f.seed, 2), j), f.threads)));
  }
  return out;
}

// Writes to --out, or stdout when empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  write(file);
}

void print_summary(const ProblemInstance& instance, const Allocation& alloc,
                   const RRReachEstimator& estimator, double beta) {
  std::cerr << "seeds: " << alloc.size() << '\n';
  for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
    const auto seeds = alloc.seeds(static_cast<AdvertiserId>(j));
    std::cerr << "advertiser " << j << ": " << seeds.size() << " seeds, reach "
              << estimator.reach(static_cast<AdvertiserId>(j), seeds) << '\n';
  }
  std::cerr << "revenue: " << objective_revenue(instance, alloc, estimator) << '\n';
  if (beta > 0.0) {
    std::cerr << "penalty objective: " << penalty_objective(instance, alloc, estimator, beta)
              << '\n';
  }
}

void add_list_option(CLI::App& app, const std::string& name, std::vector<std::size_t>& values,
                     const std::string& help) {
  app.add_option(name, values, help)->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed allocation for competing advertisers under the independent cascade model"};
  app.set_config("--config", "", "TOML/INI file with values for the common flags");
  app.require_subcommand(1);

  CommonFlags f;
  app.add_option("--graph", f.graph_path, "Edge list file (u v per line)");
  app.add_flag("--directed", f.directed, "Treat the edge list as directed");
  app.add_option("--m", f.m_flag, "Number of advertisers");
  app.add_option("--total-seeds", f.total_seeds, "Total seed budget K");
  app.add_option("--exposure-bound", f.exposure_bound, "Advertisers per node r_v");
  app.add_option("--budgets", f.budgets, "Per-advertiser budgets (one value broadcasts)")
      ->delimiter(',');
  app.add_option("--seed-caps", f.seed_caps, "Per-advertiser seed caps (one value broadcasts)")
      ->delimiter(',');
  app.add_option("--beta", f.beta, "Overshoot penalty weight in [0, 1]");
  app.add_option("--rho-mult", f.rho_mult, "RR sets per advertiser, as a multiple of n");
  app.add_option("--seed", f.seed, "Master random seed");
  app.add_option("--threads", f.threads, "Worker threads for sampling")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "Output path (stdout when omitted)");
  app.add_option(
      "--instance-config", f.instance_config,
      "JSON instance file (budgets, prices, seed_caps, exposure_bound, total_seeds, beta)");
  app.add_option("--generator", f.generator, "Synthetic graph when --graph is absent")
      ->check(CLI::IsMember({"ba", "er", "regular", "star", "path", "cycle"}));
  app.add_option("--nodes", f.nodes, "Synthetic graph size");
  app.add_option("--attach", f.attach, "Edges per new node (ba); half the degree (er, regular)");
  app.add_option("--lambda-max", f.lambda_max, "Upper end of the per-node lambda range");
  app.add_option("--mode", f.mode, "Probability replication across advertisers")
      ->check(CLI::IsMember({"independent", "identical", "swapped", "uniform"}));
  app.add_option("--p", f.p, "Arc probability for --mode uniform");
  app.add_option("--s", f.s, "Swap level for --mode swapped");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic edge list");
  std::string prob_dump;
  gen->add_option("--probabilities", prob_dump, "Also write per-advertiser arc probabilities");

  // allocate
  auto* allocate = app.add_subcommand("allocate", "Compute an allocation");
  std::string algo = "greedy";
  std::string trace_path;
  std::string report_path;
  std::size_t rounding_trials = 0;
  double epsilon = 0.1;
  allocate->add_option("--algo", algo, "Allocation algorithm")
      ->check(CLI::IsMember(
          {"greedy", "penalty-greedy", "local-search", "lp-round", "max-degree", "eigen"}));
  allocate->add_option("--trace", trace_path, "Greedy trace CSV");
  allocate->add_option("--rounding-report", report_path, "Rounding trials CSV (lp-round)");
  allocate->add_option("--rounding-trials", rounding_trials, "Trials for --rounding-report");
  allocate->add_option("--epsilon", epsilon, "Local search improvement threshold");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Evaluate an allocation by simulation");
  std::string allocation_path;
  std::size_t trials = 10000;
  simulate->add_option("--allocation", allocation_path, "Allocation CSV")->required();
  simulate->add_option("--trials", trials, "Monte Carlo cascades per advertiser");

  // experiments
  auto* calibrate = app.add_subcommand("calibrate", "RR sample size calibration");
  bench::CalibrationOptions cal;
  add_list_option(*calibrate, "--multipliers", cal.multipliers, "RR multipliers to test");
  calibrate->add_option("--repetitions", cal.repetitions, "Redraws per multiplier");

  auto* exp_k = app.add_subcommand("exp-k", "Payoff against total seeds");
  bench::PayoffVsKOptions pk;
  add_list_option(*exp_k, "--k-values", pk.k_values, "Values of K");
  exp_k->add_option("--algorithms", pk.algorithms, "Algorithms to compare")->delimiter(',');

  auto* exp_m = app.add_subcommand("exp-m", "Payoff against number of advertisers");
  bench::PayoffVsMOptions pm;
  add_list_option(*exp_m, "--m-values", pm.m_values, "Advertiser counts");
  exp_m->add_option("--algorithms", pm.algorithms, "Algorithms to compare")->delimiter(',');

  auto* exp_compete = app.add_subcommand("exp-compete", "Competition between swapped networks");
  bench::CompetitionOptions pc;
  exp_compete->add_option("--s-values", pc.s_values, "Swap levels")->delimiter(',');

  auto* exp_prob = app.add_subcommand("exp-prob", "Relative payoff against edge probability");
  bench::RelativePayoffOptions pp;
  exp_prob->add_option("--p-values", pp.p_values, "Uniform arc probabilities")->delimiter(',');

  auto* exp_scale = app.add_subcommand("exp-scale", "Sampling time against thread count");
  bench::ScalabilityOptions ps;
  add_list_option(*exp_scale, "--m-values", ps.m_values, "Advertiser counts");
  exp_scale->add_option("--thread-counts", ps.thread_counts, "Thread counts")->delimiter(',');

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto graph = make_graph(f);
      emit(f.out, [&](std::ostream& out) { write_edge_list(out, *graph); });
      if (!prob_dump.empty()) {
        const auto nets =
            replicate_for_advertisers(*graph, f.m(), make_mode(f), derive_seed(f.seed, 1));
        emit(prob_dump, [&](std::ostream& out) { write_probability_dump(out, nets, *graph); });
      }
      return 0;
    }

    if (*allocate || *simulate) {
      const auto graph = make_graph(f);
      const ProblemInstance instance = make_instance(f, graph);
      const CollectionSet collections = make_collections(f, instance);
      const RRReachEstimator estimator(collections);

      if (*simulate) {
        std::ifstream in(allocation_path);
        if (!in) throw Error("cannot open '" + allocation_path + "'");
        std::stringstream text;
        text << in.rdbuf();
        const Allocation alloc = read_allocation_csv(text.str(), instance.node_count(),
                                                     instance.advertiser_count(), graph.get());
        emit(f.out, [&](std::ostream& out) {
          out << "advertiser,seeds,reach_rr,reach_mc,reach_mc_stderr\n";
          for (std::size_t j = 0; j < instance.advertiser_count(); ++j) {
            const auto seeds = alloc.seeds(static_cast<AdvertiserId>(j));
            const auto mc = estimate_influence_mc(instance.networks[j], seeds, trials,
                                                  derive_seed(f.seed, 7 + j), f.threads);
            out << j << ',' << seeds.size() << ','
                << bench::format_number(estimate_reach(*collections[j], seeds)) << ','
                << bench::format_number(mc.mean) << ',' << bench::format_number(mc.std_error)
                << '\n';
          }
        });
        std::cerr << "revenue (estimated reach): " << objective_revenue(instance, alloc, estimator)
                  << '\n'
                  << "expected revenue (simulated): "
                  << objective_expected_revenue(instance, alloc, trials, f.seed, f.threads) << '\n';
        return 0;
      }

      Allocation alloc(instance.node_count(), instance.advertiser_count());
      std::vector<GreedyStep> trace;
      if (algo == "greedy") {
        auto r = greedy_allocate(instance, estimator);
        alloc = std::move(r.allocation);
        trace = std::move(r.trace);
      } else if (algo == "penalty-greedy") {
        auto r = penalty_greedy_allocate(instance, estimator, f.beta);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
        if (r.precondition_holds) {
          std::cerr << "guarantee factor: " << r.guarantee_factor << '\n';
        }
        alloc = std::move(r.allocation);
        trace = std::move(r.trace);
      } else if (algo == "local-search") {
        auto r = local_search_two_matroids(instance, estimator, epsilon);
        std::cerr << "local search: " << r.moves << " moves, " << r.start_objective << " -> "
                  << r.objective << '\n';
        alloc = std::move(r.allocation);
      } else if (algo == "lp-round") {
        auto r = lp_round_allocate(instance, collections, derive_seed(f.seed, 3));
        std::cerr << "OPT_LP: " << r.opt_lp << " (solver " << r.solution.solver_variables
                  << " vars, " << r.solution.solver_rows << " rows, " << r.solution.iterations
                  << " pivots)\n";
        if (!report_path.empty() && rounding_trials > 0) {
          const auto lp = build_lp(instance, collections);
          const auto runs = run_rounding_trials(lp, r.solution, rounding_trials, f.seed, f.threads);
          emit(report_path, [&](std::ostream& out) { write_rounding_report_csv(out, runs); });
        }
        alloc = std::move(r.allocation);
      } else if (algo == "max-degree") {
        alloc = max_degree_allocate(instance);
      } else {
        std::vector<std::string> warnings;
        alloc = eigen_centrality_allocate(instance, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      }
      emit(f.out, [&](std::ostream& out) { write_allocation_csv(out, alloc, graph.get()); });
      if (!trace_path.empty()) {
        emit(trace_path, [&](std::ostream& out) { write_trace_csv(out, trace, graph.get()); });
      }
      print_summary(instance, alloc, estimator, f.beta);
      return 0;
    }

    const auto graph = make_graph(f);
    if (*calibrate) {
      cal.advertisers = f.m(cal.advertisers);
      cal.lambda_max = f.lambda_max;
      cal.seed = f.seed;
      cal.threads = f.threads;
      const auto r = bench::run_calibration(graph, cal);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    } else if (*exp_k) {
      pk.advertisers = f.m(pk.advertisers);
      pk.lambda_max = f.lambda_max;
      pk.rho_multiplier = f.rho_mult;
      if (!f.budgets.empty()) pk.budget = f.budgets[0];
      pk.seed = f.seed;
      pk.threads = f.threads;
      const auto r = bench::run_payoff_vs_k(graph, pk);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    } else if (*exp_m) {
      pm.lambda_max = f.lambda_max;
      pm.exposure_bound = f.exposure_bound;
      pm.rho_multiplier = f.rho_mult;
      pm.seed = f.seed;
      pm.threads = f.threads;
      const auto r = bench::run_payoff_vs_m(graph, pm);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    } else if (*exp_compete) {
      pc.advertisers = f.m(pc.advertisers);
      if (f.total_seeds) pc.total_seeds = *f.total_seeds;
      pc.lambda_max = f.lambda_max;
      pc.rho_multiplier = f.rho_mult;
      pc.seed = f.seed;
      pc.threads = f.threads;
      const auto r = bench::run_competition(graph, pc);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    } else if (*exp_prob) {
      pp.advertisers = f.m(pp.advertisers);
      pp.rho_multiplier = f.rho_mult;
      pp.seed = f.seed;
      pp.threads = f.threads;
      const auto r = bench::run_relative_payoff(graph, pp);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    } else if (*exp_scale) {
      ps.lambda_max = f.lambda_max;
      ps.rho_multiplier = f.rho_mult;
      ps.seed = f.seed;
      const auto r = bench::run_scalability(graph, ps);
      emit(f.out, [&](std::ostream& out) { r.table().write(out); });
    }
  } catch (const coseed::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

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

#include "coseed/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace coseed {

namespace {

double snap(double x) {
  if (x < kSnapTolerance) return 0.0;
  if (x > 1.0 - kSnapTolerance) return 1.0;
  return x;
}

bool fractional(double x) { return x > 0.0 && x < 1.0; }

// Moves mass between two groups of variables: `up` gains what `down` loses.
// With probability beta / (alpha + beta) shift by +alpha, otherwise by
// -beta, where alpha and beta are the largest shifts each way that keep
// every value in [0, 1]. The variable that hits a bound is set exactly.
template <typename Up, typename Down>
void two_sided_shift(std::vector<double>& val, const Up& up, const Down& down, Engine& engine) {
  double alpha = std::numeric_limits<double>::infinity();
  double beta = std::numeric_limits<double>::infinity();
  std::size_t alpha_at = 0;
  std::size_t beta_at = 0;
  for (std::size_t e : up) {
    if (1.0 - val[e] < alpha) alpha = 1.0 - val[e], alpha_at = e;
    if (val[e] < beta) beta = val[e], beta_at = e;
  }
  for (std::size_t e : down) {
    if (val[e] < alpha) alpha = val[e], alpha_at = e;
    if (1.0 - val[e] < beta) beta = 1.0 - val[e], beta_at = e;
  }
  const bool go_up = uniform01(engine) < beta / (alpha + beta);
  const double delta = go_up ? alpha : -beta;
  for (std::size_t e : up) val[e] = snap(val[e] + delta);
  for (std::size_t e : down) val[e] = snap(val[e] - delta);
  const std::size_t tight = go_up ? alpha_at : beta_at;
  const bool tight_is_up = std::find(std::begin(up), std::end(up), tight) != std::end(up);
  val[tight] = (tight_is_up == go_up) ? 1.0 : 0.0;
}

// Final phase shared by both roundings: pair any two fractional variables
// (sum preserving), then round a lone leftover by its value.
void pair_and_finish(std::vector<double>& val, std::vector<std::size_t> open, Engine& engine) {
  while (true) {
    open.erase(std::remove_if(open.begin(), open.end(),
                              [&](std::size_t e) { return !fractional(val[e]); }),
               open.end());
    if (open.size() < 2) break;
    const std::size_t first = open[0];
    const std::size_t second = open[1];
    const std::size_t up[1] = {first};
    const std::size_t down[1] = {second};
    two_sided_shift(val, up, down, engine);
  }
  if (open.size() == 1) {
    const std::size_t e = open[0];
    val[e] = uniform01(engine) < val[e] ? 1.0 : 0.0;
  }
}

Allocation to_allocation(const FractionalAllocation& x, const std::vector<double>& val) {
  Allocation alloc(x.node_count, x.advertiser_count);
  for (std::size_t v = 0; v < x.node_count; ++v) {
    for (std::size_t j = 0; j < x.advertiser_count; ++j) {
      if (val[v * x.advertiser_count + j] == 1.0) {
        alloc.insert({static_cast<NodeId>(v), static_cast<AdvertiserId>(j)});
      }
    }
  }
  return alloc;
}

void check_input(const FractionalAllocation& x) {
  if (x.x.size() != x.node_count * x.advertiser_count) {
    throw ContractViolation("fractional allocation has the wrong size");
  }
  for (double v : x.x) {
    if (!(v >= -kSnapTolerance && v <= 1.0 + kSnapTolerance)) {
      throw DomainError("fractional values must lie in [0, 1]");
    }
  }
}

}  // namespace

Allocation dependent_round(const FractionalAllocation& x, Engine& engine) {
  check_input(x);
  const std::size_t n = x.node_count;
  const std::size_t m = x.advertiser_count;
  // Edges 0 .. n*m-1 are the x variables; slack edges follow. Vertices:
  // nodes 0 .. n-1, slack n, advertisers n+1 .. n+m.
  std::vector<double> val(x.x.size());
  for (std::size_t e = 0; e < val.size(); ++e) val[e] = snap(x.x[e]);
  std::vector<std::size_t> edge_a;
  std::vector<std::size_t> edge_b;
  std::vector<std::vector<std::size_t>> adj(n + 1 + m);
  std::vector<std::size_t> touched;
  auto add_edge = [&](std::size_t e, std::size_t a, std::size_t b) {
    if (edge_a.size() <= e) {
      edge_a.resize(e + 1);
      edge_b.resize(e + 1);
    }
    edge_a[e] = a;
    edge_b[e] = b;
    if (adj[a].empty()) touched.push_back(a);
    if (adj[b].empty()) touched.push_back(b);
    adj[a].push_back(e);
    adj[b].push_back(e);
  };
  std::size_t open = 0;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t e = v * m + j;
      if (fractional(val[e])) {
        add_edge(e, v, n + 1 + j);
        ++open;
      }
    }
  }
  if (open == 0) return to_allocation(x, val);
  for (std::size_t j = 0; j < m; ++j) {
    double degree = 0.0;
    for (std::size_t v = 0; v < n; ++v) degree += val[v * m + j];
    const double gap = std::ceil(degree) - degree;
    if (std::abs(degree - std::round(degree)) < kSnapTolerance || !fractional(gap)) continue;
    const std::size_t e = val.size();
    val.push_back(gap);
    add_edge(e, n, n + 1 + j);
    ++open;
  }
  edge_a.resize(val.size());
  edge_b.resize(val.size());

  // Drops integral edges from the back of u's list; returns a fractional edge
  // of u other than `skip`, or npos.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  auto next_edge = [&](std::size_t u, std::size_t skip) {
    auto& list = adj[u];
    for (std::size_t k = 0; k < list.size();) {
      if (!fractional(val[list[k]])) {
        list[k] = list.back();
        list.pop_back();
        continue;
      }
      if (list[k] != skip) return list[k];
      ++k;
    }
    return kNone;
  };
  auto fractional_degree = [&](std::size_t u) {
    std::size_t d = 0;
    for (std::size_t e : adj[u]) d += fractional(val[e]);
    return d;
  };

  std::vector<std::size_t> position(adj.size(), kNone);
  std::vector<std::size_t> walk_vertices;
  std::vector<std::size_t> walk_edges;
  std::vector<std::size_t> up;
  std::vector<std::size_t> down;
  while (true) {
    std::size_t start = kNone;
    std::size_t any = kNone;
    for (std::size_t u : touched) {
      const std::size_t d = fractional_degree(u);
      if (d == 1) {
        start = u;
        break;
      }
      if (d > 1 && any == kNone) any = u;
    }
    if (start == kNone) start = any;
    if (start == kNone) break;

    walk_vertices.assign(1, start);
    walk_edges.clear();
    position[start] = 0;
    std::size_t cur = start;
    std::size_t prev = kNone;
    std::size_t cycle_from = kNone;
    while (true) {
      const std::size_t e = next_edge(cur, prev);
      if (e == kNone) break;
      const std::size_t nxt = edge_a[e] == cur ? edge_b[e] : edge_a[e];
      walk_edges.push_back(e);
      if (position[nxt] != kNone) {
        cycle_from = position[nxt];
        break;
      }
      position[nxt] = walk_vertices.size();
      walk_vertices.push_back(nxt);
      cur = nxt;
      prev = e;
    }
    for (std::size_t u : walk_vertices) position[u] = kNone;

    // A cycle is the tail of the walk starting at the repeated vertex; its
    // length is even because the graph is bipartite.
    const std::size_t first = cycle_from == kNone ? 0 : cycle_from;
    up.clear();
    down.clear();
    for (std::size_t k = first; k < walk_edges.size(); ++k) {
      ((k - first) % 2 == 0 ? up : down).push_back(walk_edges[k]);
    }
    two_sided_shift(val, up, down, engine);
  }

  std::vector<std::size_t> leftover;
  for (std::size_t e = 0; e < n * m; ++e) {
    if (fractional(val[e])) leftover.push_back(e);
  }
  pair_and_finish(val, std::move(leftover), engine);
  val.resize(n * m);
  return to_allocation(x, val);
}

Allocation star_round(const FractionalAllocation& x, Engine& engine) {
  check_input(x);
  const std::size_t n = x.node_count;
  const std::size_t m = x.advertiser_count;
  std::vector<double> val(x.x.size());
  for (std::size_t e = 0; e < val.size(); ++e) val[e] = snap(x.x[e]);
  std::vector<std::size_t> leftover;
  std::vector<std::size_t> at_node;
  for (std::size_t v = 0; v < n; ++v) {
    at_node.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (fractional(val[v * m + j])) at_node.push_back(v * m + j);
    }
    while (at_node.size() >= 2) {
      const std::size_t up[1] = {at_node[0]};
      const std::size_t down[1] = {at_node[1]};
      two_sided_shift(val, up, down, engine);
      at_node.erase(std::remove_if(at_node.begin(), at_node.end(),
                                   [&](std::size_t e) { return !fractional(val[e]); }),
                    at_node.end());
    }
    if (!at_node.empty()) leftover.push_back(at_node[0]);
  }
  pair_and_finish(val, std::move(leftover), engine);
  return to_allocation(x, val);
}

Allocation dependent_round(const LPSolution& solution, std::uint64_t rng_seed) {
  Engine engine = make_engine(rng_seed, 0);
  return dependent_round(solution.x, engine);
}

Allocation star_round(const LPSolution& solution, std::uint64_t rng_seed) {
  if (solution.advertiser_caps) {
    throw ConfigError("star rounding ignores seed caps; use dependent_round for capped instances");
  }
  Engine engine = make_engine(rng_seed, 0);
  return star_round(solution.x, engine);
}

Allocation round_solution(const LPSolution& solution, Engine& engine) {
  return solution.advertiser_caps ? dependent_round(solution.x, engine)
                                  : star_round(solution.x, engine);
}

RoundedRevenue rounded_revenue(const LPInstance& lp, const Allocation& alloc) {
  RoundedRevenue out;
  for (std::size_t j = 0; j < lp.advertiser_count(); ++j) {
    const auto a = static_cast<AdvertiserId>(j);
    const auto& seeds = alloc.seeds(a);
    const double revenue =
        lp.revenue_coefficient(a) * static_cast<double>(coverage_count(lp.collection(a), seeds));
    out.uncapped += revenue;
    out.capped += std::min(lp.budget(a), revenue);
  }
  return out;
}

std::vector<RoundingTrial> run_rounding_trials(const LPInstance& lp, const LPSolution& solution,
                                               std::size_t trials, std::uint64_t rng_seed,
                                               unsigned threads) {
  std::vector<RoundingTrial> out(trials);
  if (trials == 0) return out;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  auto work = [&](unsigned w) {
    const std::size_t lo = trials * w / threads;
    const std::size_t hi = trials * (w + 1) / threads;
    for (std::size_t t = lo; t < hi; ++t) {
      Engine engine = make_engine(rng_seed, t);
      const Allocation alloc = round_solution(solution, engine);
      const RoundedRevenue r = rounded_revenue(lp, alloc);
      out[t] = {t, r.uncapped, r.capped, is_feasible(lp.constraints(), alloc)};
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  return out;
}

void write_rounding_report_csv(std::ostream& out, const std::vector<RoundingTrial>& trials) {
  const auto old_precision = out.precision(17);
  out << "trial,rounded_objective_uncapped,rounded_objective_capped,feasible\n";
  for (const auto& t : trials) {
    out << t.trial << ',' << t.uncapped << ',' << t.capped << ',' << (t.feasible ? "true" : "false")
        << '\n';
  }
  out.precision(old_precision);
}

LpRoundResult lp_round_allocate(const ProblemInstance& instance, const CollectionSet& collections,
                                std::uint64_t rng_seed, const LPSolverBackend* backend) {
  const LPInstance lp = build_lp(instance, collections);
  LpRoundResult out;
  out.solution = solve_lp(lp, backend);
  out.opt_lp = out.solution.objective;
  Engine engine = make_engine(rng_seed, 0);
  out.allocation = round_solution(out.solution, engine);
  out.revenue = rounded_revenue(lp, out.allocation);
  return out;
}

}  // namespace coseed

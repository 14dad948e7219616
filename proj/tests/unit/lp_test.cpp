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

#include "coseed/lp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "coseed/generators.hpp"
#include "coseed/greedy.hpp"
#include "coseed/heuristics.hpp"
#include "coseed/simplex.hpp"
#include "support/oracles.hpp"

namespace coseed {
namespace {

std::shared_ptr<const RRCollection> make_coll(AdvertiserId j, std::size_t n,
                                              std::vector<NodeId> roots,
                                              std::vector<std::vector<NodeId>> sets) {
  return std::make_shared<const RRCollection>(
      RRCollection::from_sets(j, n, std::move(roots), std::move(sets)));
}

ProblemInstance empty_instance(std::size_t n, std::size_t m, double budget, std::size_t k) {
  ProblemInstance inst;
  inst.networks.assign(m, InfluenceNetwork(n, {}));
  inst.profiles.assign(m, AdvertiserProfile{budget, 1.0, std::nullopt});
  inst.constraints = ConstraintSystem::uniform(n, 1, k);
  return inst;
}

// Ŵ on RR collections computed directly from the sets.
double rr_revenue(const ProblemInstance& inst, const CollectionSet& colls,
                  std::span<const GroundElement> elements) {
  double total = 0.0;
  for (std::size_t j = 0; j < inst.advertiser_count(); ++j) {
    const auto& c = *colls[j];
    std::size_t hit = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (const auto& e : elements) {
        const auto s = c.set(i);
        if (e.advertiser == j && std::binary_search(s.begin(), s.end(), e.node)) {
          ++hit;
          break;
        }
      }
    }
    const double reach = static_cast<double>(inst.node_count()) * static_cast<double>(hit) /
                         static_cast<double>(c.size());
    total += std::min(inst.profiles[j].budget, inst.profiles[j].price * reach);
  }
  return total;
}

TEST(BuildLp, Counts) {
  auto inst = empty_instance(3, 2, 5.0, 2);
  CollectionSet colls{make_coll(0, 3, {0, 1, 2, 0}, {{0}, {1, 0}, {2}, {0, 2}}),
                      make_coll(1, 3, {1, 1, 2, 0}, {{1}, {1}, {2, 1}, {0}})};
  auto lp = build_lp(inst, colls);
  auto c = lp.counts();
  EXPECT_EQ(c.y_vars, 8u);
  EXPECT_EQ(c.x_vars, 6u);
  EXPECT_EQ(c.z_vars, 2u);
  EXPECT_EQ(c.coverage_rows, 8u);
  EXPECT_EQ(c.coverage_unit_rows, 8u);
  EXPECT_EQ(c.node_rows, 3u);
  EXPECT_EQ(c.cap_rows, 0u);
  EXPECT_EQ(c.total_rows, 1u);
  EXPECT_EQ(c.revenue_link_rows, 2u);
  EXPECT_EQ(c.budget_rows, 2u);

  inst.constraints.advertiser_caps = std::vector<std::uint32_t>{1, 1};
  lp = build_lp(inst, colls);
  EXPECT_EQ(lp.counts().cap_rows, 2u);
  EXPECT_DOUBLE_EQ(lp.revenue_coefficient(0), 3.0 / 4.0);

  std::ostringstream dump;
  lp.write_standard_form(dump);
  EXPECT_NE(dump.str().find("cov_0_0: +1*y_0_0 -1*x_0_0 <= 0\n"), std::string::npos);
  EXPECT_NE(dump.str().find("cap_1:"), std::string::npos);
}

TEST(BuildLp, RejectsMismatchedCollections) {
  const auto inst = empty_instance(3, 2, 5.0, 2);
  CollectionSet one{make_coll(0, 3, {0}, {{0}})};
  EXPECT_THROW(build_lp(inst, one), ConfigError);
}

TEST(SolveLp, HandSolvable) {
  const auto inst = empty_instance(1, 1, 100.0, 1);
  CollectionSet colls{make_coll(0, 1, {0, 0}, {{0}, {0}})};
  const auto sol = solve_lp(build_lp(inst, colls));
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_NEAR(sol.x.at(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(sol.y[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.y[1], 1.0, 1e-12);
  EXPECT_NEAR(sol.z[0], 1.0, 1e-12);
}

TEST(SolveLp, ZeroBudgets) {
  const auto g = barabasi_albert(30, 2, 1);
  ProblemInstance inst;
  inst.networks = replicate_for_advertisers(g, 2, ReplicationMode::independent(0.5), 2);
  inst.profiles.assign(2, AdvertiserProfile{0.0, 1.0, std::nullopt});
  inst.constraints = ConstraintSystem::uniform(30, 1, 5);
  CollectionSet colls;
  for (AdvertiserId j = 0; j < 2; ++j) {
    colls.push_back(
        std::make_shared<const RRCollection>(sample_rr_sets(inst.networks[j], j, 300, 3 + j)));
  }
  EXPECT_EQ(solve_lp(build_lp(inst, colls)).objective, 0.0);
}

TEST(SolveLp, StarApproachesN) {
  const std::size_t leaves = 20;
  const double n = leaves + 1.0;
  const auto star = assign_uniform_probabilities(star_graph(leaves, true), 1.0);
  ProblemInstance inst;
  inst.networks.assign(4, star);
  inst.profiles.assign(4, AdvertiserProfile{n / 4, 1.0, std::nullopt});
  inst.constraints = ConstraintSystem::uniform(leaves + 1, 1, 4);
  const auto coll = std::make_shared<const RRCollection>(sample_rr_sets(star, 0, 20000, 5));
  const auto lp = build_lp(inst, {coll, coll, coll, coll});
  const auto sol = solve_lp(lp);
  EXPECT_GE(sol.objective, 0.9 * n);
  EXPECT_LE(sol.objective, n + 1e-9);
  EXPECT_LE(sol.max_violation, kLPAuditTolerance);
}

TEST(SolveLp, UpperBoundsEveryFeasibleAllocation) {
  Engine engine = make_engine(17, 0);
  testing::SmallInstanceSpec spec;
  spec.max_nodes = 5;
  for (int t = 0; t < 25; ++t) {
    spec.caps = t % 2 == 0;
    const auto inst = testing::random_small_instance(spec, engine);
    CollectionSet colls;
    for (std::size_t j = 0; j < inst.advertiser_count(); ++j) {
      colls.push_back(std::make_shared<const RRCollection>(
          sample_rr_sets(inst.networks[j], static_cast<AdvertiserId>(j), 40, 100 + t * 10 + j)));
    }
    const auto sol = solve_lp(build_lp(inst, colls));
    EXPECT_LE(sol.max_violation, kLPAuditTolerance);
    double best = 0.0;
    testing::for_each_feasible(inst.constraints, inst.node_count(), inst.advertiser_count(),
                               [&](const std::vector<GroundElement>& s) {
                                 best = std::max(best, rr_revenue(inst, colls, s));
                               });
    EXPECT_GE(sol.objective, best - 1e-6) << "instance " << t;
    const RRReachEstimator est(colls);
    EXPECT_GE(sol.objective, greedy_allocate(inst, est).objective - 1e-6);
  }
}

// Parses the standard-form dump and evaluates every row at the solution.
TEST(SolveLp, SolutionSatisfiesDumpedForm) {
  const auto g = barabasi_albert(25, 2, 3);
  ProblemInstance inst;
  inst.networks = replicate_for_advertisers(g, 2, ReplicationMode::independent(0.6), 4);
  inst.profiles = {{6.0, 1.0, std::nullopt}, {kUnlimitedBudget, 2.0, std::nullopt}};
  inst.constraints = ConstraintSystem::uniform(25, 1, 6, std::vector<std::uint32_t>{4, 4});
  CollectionSet colls;
  for (AdvertiserId j = 0; j < 2; ++j) {
    colls.push_back(
        std::make_shared<const RRCollection>(sample_rr_sets(inst.networks[j], j, 250, 5 + j)));
  }
  const auto lp = build_lp(inst, colls);
  const auto sol = solve_lp(lp);
  std::map<std::string, double> value;
  for (NodeId v = 0; v < 25; ++v) {
    for (AdvertiserId j = 0; j < 2; ++j) {
      value["x_" + std::to_string(v) + "_" + std::to_string(j)] = sol.x.at(v, j);
    }
  }
  for (AdvertiserId j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < colls[j]->size(); ++i) {
      value["y_" + std::to_string(j) + "_" + std::to_string(i)] =
          sol.y[lp.y_index(j, i) - lp.y_index(0, 0)];
    }
    value["z_" + std::to_string(j)] = sol.z[j];
  }
  std::ostringstream dump;
  lp.write_standard_form(dump);
  std::istringstream in(dump.str());
  std::string line;
  bool in_rows = false;
  std::size_t rows = 0;
  double objective = 0.0;
  while (std::getline(in, line)) {
    if (line == "subject to") {
      in_rows = true;
      continue;
    }
    if (line == "bounds") break;
    std::istringstream tok(line);
    std::string label, term;
    tok >> label;
    double lhs = 0.0;
    while (tok >> term && term != "<=") {
      const auto star = term.find('*');
      lhs += std::stod(term.substr(0, star)) * value.at(term.substr(star + 1));
    }
    if (!in_rows) {
      objective = lhs;
      continue;
    }
    double rhs;
    tok >> rhs;
    EXPECT_LE(lhs, rhs + 1e-7) << line.substr(0, 40);
    ++rows;
  }
  EXPECT_EQ(rows, lp.counts().rows());
  EXPECT_NEAR(objective, sol.objective, 1e-7);
}

class FailingBackend : public LPSolverBackend {
 public:
  std::string name() const override { return "failing"; }
  SolverResult solve(const BoundedLP&) const override {
    SolverResult r;
    r.status = SolveStatus::kIterationLimit;
    return r;
  }
};

TEST(SolveLp, BackendFailureIsReported) {
  const auto inst = empty_instance(1, 1, 100.0, 1);
  CollectionSet colls{make_coll(0, 1, {0}, {{0}})};
  FailingBackend failing;
  EXPECT_THROW(solve_lp(build_lp(inst, colls), &failing), Error);
}

TEST(DenseSimplex, TextbookLp) {
  BoundedLP lp;
  const auto x = lp.add_variable(1.0, std::numeric_limits<double>::infinity());
  const auto y = lp.add_variable(1.0, std::numeric_limits<double>::infinity());
  lp.add_row({{x, 1.0}, {y, 2.0}}, 4.0);
  lp.add_row({{x, 3.0}, {y, 1.0}}, 6.0);
  const auto r = DenseSimplex().solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.x[x], 1.6, 1e-12);
  EXPECT_NEAR(r.x[y], 1.2, 1e-12);
  EXPECT_NEAR(r.objective, 2.8, 1e-12);
}

TEST(DenseSimplex, UpperBoundsAndUnbounded) {
  BoundedLP lp;
  const auto x = lp.add_variable(2.0, 1.5);
  const auto y = lp.add_variable(1.0, 10.0);
  lp.add_row({{x, 1.0}, {y, 1.0}}, 2.0);
  const auto r = DenseSimplex().solve(lp);
  EXPECT_NEAR(r.objective, 3.5, 1e-12);
  EXPECT_NEAR(r.x[x], 1.5, 1e-12);

  BoundedLP open;
  open.add_variable(1.0, std::numeric_limits<double>::infinity());
  EXPECT_EQ(DenseSimplex().solve(open).status, SolveStatus::kUnbounded);
  EXPECT_THROW(open.add_row({{0, 1.0}}, -1.0), ContractViolation);
  EXPECT_THROW(open.add_row({{3, 1.0}}, 1.0), ContractViolation);
}

TEST(DenseSimplex, DegenerateCyclingExample) {
  // A classic instance on which Dantzig's rule cycles without an anti-cycling rule.
  DenseSimplex::Options opts;
  opts.bland_after = 3;
  BoundedLP lp;
  const double inf = std::numeric_limits<double>::infinity();
  for (double c : {0.75, -150.0, 0.02, -6.0}) lp.add_variable(c, inf);
  lp.add_row({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, 0.0);
  lp.add_row({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, 0.0);
  lp.add_row({{2, 1.0}}, 1.0);
  const auto r = DenseSimplex(opts).solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-12);
}

TEST(DenseSimplex, RandomLpsSatisfyConstraintsAndBeatVertices) {
  Engine engine = make_engine(3, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    BoundedLP lp;
    const std::size_t nv = 3 + t % 5;
    for (std::size_t i = 0; i < nv; ++i) lp.add_variable(u(engine), 0.5 + u(engine));
    for (int r = 0; r < 4; ++r) {
      std::vector<std::pair<std::uint32_t, double>> terms;
      for (std::uint32_t i = 0; i < nv; ++i) terms.push_back({i, u(engine)});
      lp.add_row(terms, 1.0 + u(engine));
    }
    const auto r = DenseSimplex().solve(lp);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    for (const auto& row : lp.rows) {
      double lhs = 0.0;
      for (auto [i, a] : row.terms) lhs += a * r.x[i];
      EXPECT_LE(lhs, row.rhs + 1e-9);
    }
    // No feasible random point does better.
    for (int s = 0; s < 200; ++s) {
      std::vector<double> p(nv);
      for (std::size_t i = 0; i < nv; ++i) p[i] = u(engine) * lp.upper[i];
      bool ok = true;
      for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (auto [i, a] : row.terms) lhs += a * p[i];
        ok = ok && lhs <= row.rhs;
      }
      if (!ok) continue;
      double obj = 0.0;
      for (std::size_t i = 0; i < nv; ++i) obj += lp.objective[i] * p[i];
      EXPECT_LE(obj, r.objective + 1e-9);
    }
  }
}

}  // namespace
}  // namespace coseed

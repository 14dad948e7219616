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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

namespace coseed {

LPInstance build_lp(const ProblemInstance& instance, const CollectionSet& collections) {
  instance.validate();
  const std::size_t n = instance.node_count();
  const std::size_t m = instance.advertiser_count();
  if (collections.size() != m) {
    throw ConfigError(std::to_string(collections.size()) + " RR collections for " +
                      std::to_string(m) + " advertisers");
  }
  LPInstance lp;
  lp.node_count_ = n;
  lp.advertiser_count_ = m;
  lp.collections_ = collections;
  lp.constraints_ = instance.constraints;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& c = collections[j];
    if (!c || c->size() == 0)
      throw ConfigError("advertiser " + std::to_string(j) + " has no RR sets");
    if (c->node_count() != n) throw ConfigError("RR collection size differs from the graph");
    lp.coefficient_.push_back(static_cast<double>(n) / static_cast<double>(c->size()) *
                              instance.profiles[j].price);
    lp.budget_.push_back(instance.profiles[j].budget);
    lp.y_offset_.push_back(lp.y_offset_.back() + c->size());
  }
  return lp;
}

LPCounts LPInstance::counts() const {
  LPCounts c;
  c.x_vars = node_count_ * advertiser_count_;
  c.y_vars = y_offset_.back();
  c.z_vars = advertiser_count_;
  c.coverage_rows = c.y_vars;
  c.coverage_unit_rows = c.y_vars;
  c.node_rows = node_count_;
  c.cap_rows = has_advertiser_caps() ? advertiser_count_ : 0;
  c.total_rows = 1;
  c.revenue_link_rows = advertiser_count_;
  c.budget_rows = static_cast<std::size_t>(
      std::count_if(budget_.begin(), budget_.end(), [](double b) { return !std::isinf(b); }));
  return c;
}

void LPInstance::write_standard_form(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  const std::size_t m = advertiser_count_;
  auto x = [&](std::size_t v, std::size_t j) {
    return "x_" + std::to_string(v) + "_" + std::to_string(j);
  };
  auto y = [&](std::size_t j, std::size_t i) {
    return "y_" + std::to_string(j) + "_" + std::to_string(i);
  };
  out << "maximize\n  obj:";
  for (std::size_t j = 0; j < m; ++j) out << " +1*z_" << j;
  out << "\nsubject to\n";
  for (std::size_t j = 0; j < m; ++j) {
    const RRCollection& c = *collections_[j];
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << "  cov_" << j << '_' << i << ": +1*" << y(j, i);
      for (NodeId v : c.set(i)) out << " -1*" << x(v, j);
      out << " <= 0\n";
      out << "  unit_" << j << '_' << i << ": +1*" << y(j, i) << " <= 1\n";
    }
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    out << "  node_" << v << ':';
    for (std::size_t j = 0; j < m; ++j) out << " +1*" << x(v, j);
    out << " <= " << constraints_.exposure_bounds[v] << '\n';
  }
  if (constraints_.advertiser_caps) {
    for (std::size_t j = 0; j < m; ++j) {
      out << "  cap_" << j << ':';
      for (std::size_t v = 0; v < node_count_; ++v) out << " +1*" << x(v, j);
      out << " <= " << (*constraints_.advertiser_caps)[j] << '\n';
    }
  }
  out << "  total:";
  for (std::size_t v = 0; v < node_count_; ++v) {
    for (std::size_t j = 0; j < m; ++j) out << " +1*" << x(v, j);
  }
  out << " <= " << constraints_.total_cap << '\n';
  for (std::size_t j = 0; j < m; ++j) {
    out << "  link_" << j << ": +1*z_" << j;
    for (std::size_t i = 0; i < collections_[j]->size(); ++i) {
      out << " -" << coefficient_[j] << '*' << y(j, i);
    }
    out << " <= 0\n";
    if (!std::isinf(budget_[j]))
      out << "  budget_" << j << ": +1*z_" << j << " <= " << budget_[j] << '\n';
  }
  out << "bounds\n";
  for (std::size_t v = 0; v < node_count_; ++v) {
    for (std::size_t j = 0; j < m; ++j) out << "  0 <= " << x(v, j) << " <= 1\n";
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < collections_[j]->size(); ++i) out << "  0 <= " << y(j, i) << '\n';
  }
  for (std::size_t j = 0; j < m; ++j) out << "  0 <= z_" << j << '\n';
  out << "end\n";
  out.precision(old_precision);
}

double audit_lp_solution(const LPInstance& lp, const LPSolution& sol) {
  const std::size_t n = lp.node_count();
  const std::size_t m = lp.advertiser_count();
  const auto& cons = lp.constraints();
  double worst = 0.0;
  auto note = [&](double excess) { worst = std::max(worst, excess); };
  if (sol.x.x.size() != n * m || sol.z.size() != m || sol.y.size() != lp.counts().y_vars) {
    throw ContractViolation("LP solution does not match the instance");
  }
  for (double x : sol.x.x) {
    note(-x);
    note(x - 1.0);
  }
  std::size_t yi = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto a = static_cast<AdvertiserId>(j);
    const RRCollection& c = lp.collection(a);
    double covered = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i, ++yi) {
      const double y = sol.y[yi];
      double support = 0.0;
      for (NodeId v : c.set(i)) support += sol.x.at(v, a);
      note(y - support);
      note(y - 1.0);
      note(-y);
      covered += y;
    }
    note(sol.z[j] - lp.revenue_coefficient(a) * covered);
    note(sol.z[j] - lp.budget(a));
    note(-sol.z[j]);
  }
  double total = 0.0;
  std::vector<double> per_advertiser(m, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double exposure = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = sol.x.at(static_cast<NodeId>(v), static_cast<AdvertiserId>(j));
      exposure += x;
      per_advertiser[j] += x;
    }
    total += exposure;
    note(exposure - cons.exposure_bounds[v]);
  }
  if (cons.advertiser_caps) {
    for (std::size_t j = 0; j < m; ++j) note(per_advertiser[j] - (*cons.advertiser_caps)[j]);
  }
  note(total - static_cast<double>(cons.total_cap));
  return worst;
}

namespace {

// Groups the sets of one collection by content. Returns the class of every
// set and the number of classes.
std::size_t classify_sets(const RRCollection& c, std::vector<std::uint32_t>& class_of,
                          std::vector<std::uint32_t>& representative, std::vector<double>& weight) {
  std::vector<std::uint32_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    auto sa = c.set(a);
    auto sb = c.set(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  };
  std::stable_sort(order.begin(), order.end(), less);
  class_of.assign(c.size(), 0);
  representative.clear();
  weight.clear();
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || less(order[k - 1], order[k])) {
      representative.push_back(order[k]);
      weight.push_back(0.0);
    }
    class_of[order[k]] = static_cast<std::uint32_t>(representative.size() - 1);
    weight.back() += 1.0;
  }
  return representative.size();
}

}  // namespace

LPSolution solve_lp(const LPInstance& lp, const LPSolverBackend* backend) {
  const DenseSimplex fallback;
  if (backend == nullptr) backend = &fallback;
  const std::size_t n = lp.node_count();
  const std::size_t m = lp.advertiser_count();
  const auto& cons = lp.constraints();
  constexpr std::uint32_t kUnused = static_cast<std::uint32_t>(-1);

  BoundedLP model;
  // x variables only for pairs that appear in some RR set of the advertiser;
  // the others cannot raise the objective and stay at 0.
  std::vector<std::uint32_t> x_var(n * m, kUnused);
  for (std::size_t j = 0; j < m; ++j) {
    const RRCollection& c = lp.collection(static_cast<AdvertiserId>(j));
    for (std::size_t v = 0; v < n; ++v) {
      if (!c.sets_containing(static_cast<NodeId>(v)).empty()) {
        x_var[v * m + j] = model.add_variable(0.0, 1.0);
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> class_of(m);
  std::vector<std::vector<std::uint32_t>> representative(m);
  std::vector<std::vector<double>> weight(m);
  std::vector<std::uint32_t> class_base(m);
  for (std::size_t j = 0; j < m; ++j) {
    const RRCollection& c = lp.collection(static_cast<AdvertiserId>(j));
    const std::size_t classes = classify_sets(c, class_of[j], representative[j], weight[j]);
    class_base[j] = static_cast<std::uint32_t>(model.variable_count);
    for (std::size_t k = 0; k < classes; ++k) model.add_variable(0.0, 1.0);
  }
  std::vector<std::uint32_t> z_var(m);
  for (std::size_t j = 0; j < m; ++j) {
    z_var[j] = model.add_variable(1.0, lp.budget(static_cast<AdvertiserId>(j)));
  }

  for (std::size_t j = 0; j < m; ++j) {
    const RRCollection& c = lp.collection(static_cast<AdvertiserId>(j));
    for (std::size_t k = 0; k < representative[j].size(); ++k) {
      std::vector<std::pair<std::uint32_t, double>> terms{{class_base[j] + k, 1.0}};
      for (NodeId v : c.set(representative[j][k])) terms.push_back({x_var[v * m + j], -1.0});
      model.add_row(std::move(terms), 0.0);
    }
  }
  std::size_t used_total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::pair<std::uint32_t, double>> terms;
    for (std::size_t j = 0; j < m; ++j) {
      if (x_var[v * m + j] != kUnused) terms.push_back({x_var[v * m + j], 1.0});
    }
    used_total += terms.size();
    // With x <= 1 the row only binds when more pairs exist than the bound.
    if (terms.size() > cons.exposure_bounds[v])
      model.add_row(std::move(terms), cons.exposure_bounds[v]);
  }
  if (cons.advertiser_caps) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::pair<std::uint32_t, double>> terms;
      for (std::size_t v = 0; v < n; ++v) {
        if (x_var[v * m + j] != kUnused) terms.push_back({x_var[v * m + j], 1.0});
      }
      if (terms.size() > (*cons.advertiser_caps)[j]) {
        model.add_row(std::move(terms), (*cons.advertiser_caps)[j]);
      }
    }
  }
  if (used_total > cons.total_cap) {
    std::vector<std::pair<std::uint32_t, double>> terms;
    for (std::uint32_t var : x_var) {
      if (var != kUnused) terms.push_back({var, 1.0});
    }
    model.add_row(std::move(terms), static_cast<double>(cons.total_cap));
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double coef = lp.revenue_coefficient(static_cast<AdvertiserId>(j));
    std::vector<std::pair<std::uint32_t, double>> terms{{z_var[j], 1.0}};
    for (std::size_t k = 0; k < weight[j].size(); ++k) {
      terms.push_back({class_base[j] + static_cast<std::uint32_t>(k), -coef * weight[j][k]});
    }
    model.add_row(std::move(terms), 0.0);
  }

  const SolverResult raw = backend->solve(model);
  if (raw.status != SolveStatus::kOptimal) {
    throw Error(backend->name() + (raw.status == SolveStatus::kUnbounded
                                       ? " reported an unbounded LP"
                                       : " hit its iteration limit"));
  }

  LPSolution sol;
  sol.status = raw.status;
  sol.iterations = raw.iterations;
  sol.solver_variables = model.variable_count;
  sol.solver_rows = model.rows.size();
  sol.advertiser_caps = lp.has_advertiser_caps();
  sol.x = FractionalAllocation(n, m);
  for (std::size_t p = 0; p < n * m; ++p) {
    if (x_var[p] != kUnused) sol.x.x[p] = std::clamp(raw.x[x_var[p]], 0.0, 1.0);
  }
  // Pull the solver's round-off back inside the packing rows. Every step only
  // lowers values, so feasibility is reached without touching the objective
  // beyond that round-off.
  auto shrink = [](double sum, double bound) { return sum > bound ? bound / sum : 1.0; };
  for (std::size_t v = 0; v < n; ++v) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += sol.x.x[v * m + j];
    const double f = shrink(sum, cons.exposure_bounds[v]);
    if (f < 1.0) {
      for (std::size_t j = 0; j < m; ++j) sol.x.x[v * m + j] *= f;
    }
  }
  if (cons.advertiser_caps) {
    for (std::size_t j = 0; j < m; ++j) {
      double sum = 0.0;
      for (std::size_t v = 0; v < n; ++v) sum += sol.x.x[v * m + j];
      const double f = shrink(sum, (*cons.advertiser_caps)[j]);
      if (f < 1.0) {
        for (std::size_t v = 0; v < n; ++v) sol.x.x[v * m + j] *= f;
      }
    }
  }
  {
    const double sum = std::accumulate(sol.x.x.begin(), sol.x.x.end(), 0.0);
    const double f = shrink(sum, static_cast<double>(cons.total_cap));
    if (f < 1.0) {
      for (double& x : sol.x.x) x *= f;
    }
  }
  sol.y.assign(lp.counts().y_vars, 0.0);
  sol.z.assign(m, 0.0);
  std::size_t yi = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto a = static_cast<AdvertiserId>(j);
    const RRCollection& c = lp.collection(a);
    double covered = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i, ++yi) {
      double support = 0.0;
      for (NodeId v : c.set(i)) support += sol.x.at(v, a);
      const double y = raw.x[class_base[j] + class_of[j][i]];
      sol.y[yi] = std::clamp(std::min(y, support), 0.0, 1.0);
      covered += sol.y[yi];
    }
    sol.z[j] = std::max(
        0.0, std::min({raw.x[z_var[j]], lp.budget(a), lp.revenue_coefficient(a) * covered}));
  }
  sol.objective = std::accumulate(sol.z.begin(), sol.z.end(), 0.0);
  sol.max_violation = audit_lp_solution(lp, sol);
  if (sol.max_violation > kLPAuditTolerance) {
    throw Error("LP solution fails the feasibility audit by " + std::to_string(sol.max_violation));
  }
  return sol;
}

}  // namespace coseed

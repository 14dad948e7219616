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

// Fractional relaxation of seed allocation over RR samples:
//
//   maximize  sum_j z_j
//   s.t.      y_i <= sum_{v in R_i} x_{v,j(i)},  y_i <= 1     per RR set i
//             sum_j x_{v,j} <= r_v                            per node v
//             sum_v x_{v,j} <= k_j                            per advertiser (with caps)
//             sum x <= K
//             z_j <= (n / rho_j) c_j sum_{i in RR_j} y_i,  z_j <= B_j
//             0 <= x <= 1, 0 <= y, 0 <= z

#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "coseed/payoff.hpp"
#include "coseed/rrsets.hpp"
#include "coseed/simplex.hpp"

namespace coseed {

struct LPCounts {
  std::size_t x_vars = 0;
  std::size_t y_vars = 0;
  std::size_t z_vars = 0;
  std::size_t coverage_rows = 0;       // y_i <= sum x
  std::size_t coverage_unit_rows = 0;  // y_i <= 1
  std::size_t node_rows = 0;
  std::size_t cap_rows = 0;
  std::size_t total_rows = 0;
  std::size_t revenue_link_rows = 0;
  std::size_t budget_rows = 0;  // finite budgets only

  std::size_t variables() const { return x_vars + y_vars + z_vars; }
  std::size_t rows() const {
    return coverage_rows + coverage_unit_rows + node_rows + cap_rows + total_rows +
           revenue_link_rows + budget_rows;
  }
};

class LPInstance {
 public:
  std::size_t node_count() const { return node_count_; }
  std::size_t advertiser_count() const { return advertiser_count_; }
  const RRCollection& collection(AdvertiserId j) const { return *collections_[j]; }
  const CollectionSet& collections() const { return collections_; }
  // (n / rho_j) * c_j
  double revenue_coefficient(AdvertiserId j) const { return coefficient_[j]; }
  double budget(AdvertiserId j) const { return budget_[j]; }
  const ConstraintSystem& constraints() const { return constraints_; }
  bool has_advertiser_caps() const { return constraints_.advertiser_caps.has_value(); }

  LPCounts counts() const;

  // Variable order: x (v-major, x_{v,j} at v * m + j), then y advertiser by
  // advertiser, then z.
  std::size_t x_index(NodeId v, AdvertiserId j) const { return v * advertiser_count_ + j; }
  std::size_t y_index(AdvertiserId j, std::size_t i) const {
    return node_count_ * advertiser_count_ + y_offset_[j] + i;
  }
  std::size_t z_index(AdvertiserId j) const {
    return node_count_ * advertiser_count_ + y_offset_.back() + j;
  }

  // Plain-text standard form: objective, "coef*var ... <= rhs" rows, bounds.
  void write_standard_form(std::ostream& out) const;

 private:
  friend LPInstance build_lp(const ProblemInstance&, const CollectionSet&);

  std::size_t node_count_ = 0;
  std::size_t advertiser_count_ = 0;
  CollectionSet collections_;
  std::vector<double> coefficient_;
  std::vector<double> budget_;
  std::vector<std::size_t> y_offset_{0};
  ConstraintSystem constraints_;
};

// One collection per advertiser; ConfigError otherwise.
LPInstance build_lp(const ProblemInstance& instance, const CollectionSet& collections);

// x_{v,j} for all pairs, v-major.
struct FractionalAllocation {
  std::size_t node_count = 0;
  std::size_t advertiser_count = 0;
  std::vector<double> x;

  FractionalAllocation() = default;
  FractionalAllocation(std::size_t n, std::size_t m)
      : node_count(n), advertiser_count(m), x(n * m) {}
  double& at(NodeId v, AdvertiserId j) { return x[v * advertiser_count + j]; }
  double at(NodeId v, AdvertiserId j) const { return x[v * advertiser_count + j]; }
};

struct LPSolution {
  SolveStatus status = SolveStatus::kOptimal;
  FractionalAllocation x;
  std::vector<double> y;  // per RR set, in y_index order
  std::vector<double> z;
  double objective = 0.0;  // OPT_LP
  std::size_t iterations = 0;
  std::size_t solver_variables = 0;  // after merging identical RR sets
  std::size_t solver_rows = 0;
  double max_violation = 0.0;  // from the independent audit
  bool advertiser_caps = false;
};

inline constexpr double kLPAuditTolerance = 1e-7;

// Largest violation of any row or bound of the full (unmerged) LP.
double audit_lp_solution(const LPInstance& lp, const LPSolution& solution);

// Solves with `backend` (the dense simplex when null). Identical RR sets of
// one advertiser share a coverage variable inside the solver; the solution is
// expanded back and audited against the full LP. Error when the backend does
// not reach optimality or the audit exceeds kLPAuditTolerance.
LPSolution solve_lp(const LPInstance& lp, const LPSolverBackend* backend = nullptr);

}  // namespace coseed

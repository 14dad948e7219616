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

#include "coseed/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "coseed/simd.hpp"
#include "coseed/types.hpp"

namespace coseed {

std::uint32_t BoundedLP::add_variable(double cost, double upper_bound) {
  if (!(upper_bound >= 0.0)) throw ContractViolation("variable upper bound must be >= 0");
  objective.push_back(cost);
  upper.push_back(upper_bound);
  return static_cast<std::uint32_t>(variable_count++);
}

void BoundedLP::add_row(std::vector<std::pair<std::uint32_t, double>> terms, double rhs) {
  if (!(rhs >= 0.0) || std::isinf(rhs)) {
    throw ContractViolation("row right-hand sides must be finite and non-negative");
  }
  for (const auto& [index, coef] : terms) {
    if (index >= variable_count) throw ContractViolation("row references an unknown variable");
    (void)coef;
  }
  rows.push_back({std::move(terms), rhs});
}

namespace {

// Basic variable of row r:      x_B(r) = beta_r - sum_k T[r][k] * x_N(k)
// Objective:                    z      = beta_z - sum_k T[z][k] * x_N(k)
// Every nonbasic variable sits at 0; a variable resting at its upper bound is
// stored complemented (u - x), which keeps that invariant.
class Tableau {
 public:
  Tableau(const BoundedLP& lp, const DenseSimplex::Options& options)
      : rows_(lp.rows.size()),
        cols_(lp.variable_count),
        stride_(lp.variable_count + 1),
        options_(options),
        data_((rows_ + 1) * stride_, 0.0),
        upper_(lp.variable_count + rows_, kInf),
        complemented_(lp.variable_count + rows_, 0),
        basic_(rows_),
        nonbasic_(cols_) {
    for (std::size_t r = 0; r < rows_; ++r) {
      double* row = row_ptr(r);
      for (const auto& [k, coef] : lp.rows[r].terms) row[k] += coef;
      row[cols_] = lp.rows[r].rhs;
      basic_[r] = static_cast<std::uint32_t>(cols_ + r);
    }
    double* z = row_ptr(rows_);
    for (std::size_t k = 0; k < cols_; ++k) {
      z[k] = -lp.objective[k];
      upper_[k] = lp.upper[k];
      nonbasic_[k] = static_cast<std::uint32_t>(k);
    }
  }

  SolverResult run() {
    SolverResult result;
    const std::size_t limit =
        options_.max_iterations != 0 ? options_.max_iterations : 50 * (rows_ + cols_) + 1000;
    std::size_t degenerate_run = 0;
    result.status = SolveStatus::kIterationLimit;
    while (result.iterations < limit) {
      const bool bland = degenerate_run >= options_.bland_after;
      const std::size_t k = choose_entering(bland);
      if (k == kNone) {
        result.status = SolveStatus::kOptimal;
        break;
      }
      ++result.iterations;
      const std::uint32_t entering = nonbasic_[k];
      double step = upper_[entering];
      std::size_t leave = kNone;
      bool leave_at_upper = false;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = row_ptr(r);
        const double a = row[k];
        if (std::abs(a) <= options_.pivot_tolerance) continue;
        double ratio;
        bool to_upper = false;
        if (a > 0.0) {
          ratio = std::max(0.0, row[cols_]) / a;
        } else {
          const double u = upper_[basic_[r]];
          if (std::isinf(u)) continue;
          ratio = std::max(0.0, u - row[cols_]) / -a;
          to_upper = true;
        }
        const bool take = leave == kNone
                              ? ratio <= step
                              : ratio < step || (ratio == step && prefer(r, leave, k, bland));
        if (take) {
          step = ratio;
          leave = r;
          leave_at_upper = to_upper;
        }
      }
      if (leave == kNone && std::isinf(step)) {
        result.status = SolveStatus::kUnbounded;
        break;
      }
      if (step <= 1e-12) {
        ++result.degenerate_pivots;
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
      if (leave == kNone) {
        complement_column(k);
        continue;
      }
      if (leave_at_upper) complement_row(leave);
      pivot(leave, k);
    }
    extract(result);
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double* row_ptr(std::size_t r) { return data_.data() + r * stride_; }

  std::size_t choose_entering(bool bland) {
    const double* z = row_ptr(rows_);
    std::size_t best = kNone;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (z[k] >= -options_.optimality_tolerance) continue;
      if (upper_[nonbasic_[k]] <= 0.0) continue;
      if (best == kNone) {
        best = k;
      } else if (bland ? nonbasic_[k] < nonbasic_[best] : z[k] < z[best]) {
        best = k;
      }
    }
    return best;
  }

  // Ratio-test tie-break between rows r and current choice s.
  bool prefer(std::size_t r, std::size_t s, std::size_t k, bool bland) {
    if (bland) return basic_[r] < basic_[s];
    return std::abs(row_ptr(r)[k]) > std::abs(row_ptr(s)[k]);
  }

  // Nonbasic x_N(k) jumps to its upper bound: substitute x = u - x'.
  void complement_column(std::size_t k) {
    const std::uint32_t var = nonbasic_[k];
    const double u = upper_[var];
    for (std::size_t r = 0; r <= rows_; ++r) {
      double* row = row_ptr(r);
      const double a = row[k];
      if (a == 0.0) continue;
      row[cols_] -= a * u;
      row[k] = -a;
    }
    complemented_[var] ^= 1;
  }

  // Basic x_B(r) leaves at its upper bound: substitute x = u - x' in row r.
  void complement_row(std::size_t r) {
    const std::uint32_t var = basic_[r];
    double* row = row_ptr(r);
    for (std::size_t k = 0; k < cols_; ++k) row[k] = -row[k];
    row[cols_] = upper_[var] - row[cols_];
    complemented_[var] ^= 1;
  }

  void pivot(std::size_t r, std::size_t k) {
    double* prow = row_ptr(r);
    const double p = prow[k];
    simd::scale(1.0 / p, std::span<double>(prow, stride_));
    prow[k] = 1.0 / p;
    std::span<const double> pivot_row(prow, stride_);
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = row_ptr(i);
      const double f = row[k];
      if (f == 0.0) continue;
      simd::axpy(-f, pivot_row, std::span<double>(row, stride_));
      row[k] = -f * prow[k];
      if (i < rows_ && row[cols_] < 0.0 && row[cols_] > -1e-9) row[cols_] = 0.0;
    }
    std::swap(basic_[r], nonbasic_[k]);
  }

  void extract(SolverResult& result) {
    std::vector<double> value(cols_ + rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) value[basic_[r]] = row_ptr(r)[cols_];
    result.x.assign(cols_, 0.0);
    for (std::size_t v = 0; v < cols_; ++v) {
      double x = value[v];
      if (complemented_[v]) x = upper_[v] - x;
      result.x[v] = std::clamp(x, 0.0, upper_[v]);
    }
    result.objective = row_ptr(rows_)[cols_];
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  DenseSimplex::Options options_;
  std::vector<double> data_;
  std::vector<double> upper_;
  std::vector<std::uint8_t> complemented_;
  std::vector<std::uint32_t> basic_;
  std::vector<std::uint32_t> nonbasic_;
};

}  // namespace

SolverResult DenseSimplex::solve(const BoundedLP& lp) const {
  if (lp.objective.size() != lp.variable_count || lp.upper.size() != lp.variable_count) {
    throw ContractViolation("objective and bounds must have one entry per variable");
  }
  const std::size_t entries = (lp.rows.size() + 1) * (lp.variable_count + 1);
  if (entries > options_.max_tableau_entries) {
    throw CapacityError("LP tableau of " + std::to_string(lp.rows.size()) + " rows and " +
                        std::to_string(lp.variable_count) +
                        " columns exceeds the dense solver limit; use a smaller RR sample or an "
                        "external solver on the standard-form dump");
  }
  Tableau tableau(lp, options_);
  SolverResult result = tableau.run();
  double objective = 0.0;
  for (std::size_t v = 0; v < lp.variable_count; ++v) objective += lp.objective[v] * result.x[v];
  result.objective = objective;
  return result;
}

}  // namespace coseed

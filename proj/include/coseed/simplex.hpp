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

// Linear programs of the form
//
//   maximize c.x  subject to  A x <= b,  0 <= x <= u,
//
// with b >= 0, so x = 0 is always feasible and no phase one is needed.

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace coseed {

struct BoundedLP {
  struct Row {
    std::vector<std::pair<std::uint32_t, double>> terms;
    double rhs = 0.0;
  };

  std::size_t variable_count = 0;
  std::vector<double> objective;  // c, one per variable
  std::vector<double> upper;      // u, infinity allowed
  std::vector<Row> rows;

  std::uint32_t add_variable(double cost, double upper_bound);
  // ContractViolation for a negative or infinite rhs, or a bad index.
  void add_row(std::vector<std::pair<std::uint32_t, double>> terms, double rhs);
};

enum class SolveStatus { kOptimal, kUnbounded, kIterationLimit };

struct SolverResult {
  SolveStatus status = SolveStatus::kOptimal;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t degenerate_pivots = 0;
};

class LPSolverBackend {
 public:
  virtual ~LPSolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolverResult solve(const BoundedLP& lp) const = 0;
};

// Dense condensed tableau with implicit upper bounds. Dantzig pricing, with
// Bland's rule after a run of degenerate pivots. Row updates go through the
// dispatched simd::axpy kernel.
class DenseSimplex : public LPSolverBackend {
 public:
  struct Options {
    double optimality_tolerance = 1e-9;
    double pivot_tolerance = 1e-9;
    std::size_t max_iterations = 0;  // 0 = 50 * (rows + columns) + 1000
    std::size_t bland_after = 50;    // consecutive degenerate pivots
    std::size_t max_tableau_entries = std::size_t{1} << 27;
  };

  DenseSimplex() = default;
  explicit DenseSimplex(Options options) : options_(options) {}
  std::string name() const override { return "dense-simplex"; }
  // CapacityError when the tableau would exceed max_tableau_entries.
  SolverResult solve(const BoundedLP& lp) const override;

 private:
  Options options_;
};

}  // namespace coseed

// Copyright 2026 The Persuade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense two-phase tableau simplex for small linear programs:
//
//   maximize  c^T x   subject to  A_i x {<=, >=, =} b_i,  x >= 0.
//
// The entering column follows Bland's rule (obedience LPs are heavily
// degenerate); the leaving row comes from a two-pass ratio test that prefers
// large pivots. Rows are scaled to unit max coefficient. Intended for
// problems with at most a few hundred variables.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "persuade/error.hpp"

namespace persuade::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation;
  double rhs;
};

struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<Constraint> constraints;

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    require(coeffs.size() == num_vars, ErrorCode::kDimensionMismatch,
            "constraint has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                std::to_string(num_vars));
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Solution {
  Status status = Status::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

namespace detail {

inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasTol = 1e-10;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  // Row `rows_` is the objective row; column `cols_` is the right-hand side.
  double& obj(std::size_t c) { return at(rows_, c); }
  double& rhs(std::size_t r) { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double pv = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= pv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Runs simplex iterations on the current objective row. `allowed[c]`
  // marks columns that may enter the basis.
  Status optimize(const std::vector<bool>& allowed, std::size_t& pivots,
                  std::size_t max_pivots, double eps) {
    while (pivots < max_pivots) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && obj(c) < -eps) {
          enter = c;  // Bland: lowest eligible index
          break;
        }
      }
      if (enter == cols_) return Status::kOptimal;
      // Two-pass ratio test: bound the step with a small feasibility
      // slack, then take the largest pivot among rows within that bound.
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        double a = at(r, enter);
        if (a > kPivotTol) bound = std::min(bound, (std::max(rhs(r), 0.0) + kFeasTol) / a);
      }
      std::size_t leave = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        double a = at(r, enter);
        if (a <= kPivotTol || std::max(rhs(r), 0.0) / a > bound) continue;
        if (leave == rows_ || a > at(leave, enter) ||
            (a == at(leave, enter) && basis_[r] < basis_[leave])) {
          leave = r;
        }
      }
      if (leave == rows_) return Status::kUnbounded;
      pivot(leave, enter);
      ++pivots;
    }
    return Status::kIterationLimit;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& problem, double eps = 1e-11,
                      std::size_t max_pivots = 100000) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  require(problem.objective.size() == n, ErrorCode::kDimensionMismatch,
          "objective length does not match variable count");

  // Normalize to nonnegative right-hand sides and unit row scale.
  std::vector<Constraint> rows = problem.constraints;
  for (auto& row : rows) {
    double big = 0.0;
    for (double a : row.coeffs) big = std::max(big, std::abs(a));
    if (big > 0.0) {
      for (double& a : row.coeffs) a /= big;
      row.rhs /= big;
    }
    if (row.rhs < 0.0) {
      for (double& a : row.coeffs) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  std::size_t num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++num_slack;
    if (row.relation != Relation::kLessEqual) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t cols = art_begin + num_art;
  detail::Tableau t(m, cols);

  std::size_t next_slack = n, next_art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = rows[r].coeffs[c];
    t.rhs(r) = rows[r].rhs;
    switch (rows[r].relation) {
      case Relation::kLessEqual:
        t.at(r, next_slack) = 1.0;
        t.basis()[r] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(r, next_slack++) = -1.0;
        t.at(r, next_art) = 1.0;
        t.basis()[r] = next_art++;
        break;
      case Relation::kEqual:
        t.at(r, next_art) = 1.0;
        t.basis()[r] = next_art++;
        break;
    }
  }

  Solution sol;
  std::vector<bool> allowed(cols, true);

  // Phase 1: maximize -sum(artificials).
  if (num_art > 0) {
    for (std::size_t c = art_begin; c < cols; ++c) t.obj(c) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] >= art_begin) {
        for (std::size_t c = 0; c <= cols; ++c) t.obj(c) -= t.at(r, c);
      }
    }
    Status s = t.optimize(allowed, sol.pivots, max_pivots, eps);
    if (s == Status::kIterationLimit) {
      sol.status = s;
      return sol;
    }
    double infeasibility = -t.obj(cols);
    double scale = 1.0;
    for (const auto& row : rows) scale = std::max(scale, std::abs(row.rhs));
    if (infeasibility > 1e-9 * scale) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis. Such a row is
    // degenerate, so its residual is dropped; pivot on the largest entry.
    // A row with no usable entry is redundant and is cleared.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art_begin) continue;
      std::size_t best = art_begin;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > detail::kPivotTol &&
            (best == art_begin || std::abs(t.at(r, c)) > std::abs(t.at(r, best)))) {
          best = c;
        }
      }
      t.rhs(r) = 0.0;
      if (best != art_begin) {
        t.pivot(r, best);
      } else {
        for (std::size_t c = 0; c < art_begin; ++c) t.at(r, c) = 0.0;
      }
    }
    for (std::size_t c = art_begin; c < cols; ++c) allowed[c] = false;
  }

  // Phase 2.
  for (std::size_t c = 0; c <= cols; ++c) t.obj(c) = 0.0;
  for (std::size_t c = 0; c < n; ++c) t.obj(c) = -problem.objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t b = t.basis()[r];
    double f = t.obj(b);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.obj(c) -= f * t.at(r, c);
  }
  sol.status = t.optimize(allowed, sol.pivots, max_pivots, eps);
  if (sol.status != Status::kOptimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) sol.x[t.basis()[r]] = t.rhs(r);
  }
  sol.objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.objective += problem.objective[c] * sol.x[c];
  return sol;
}

}  // namespace persuade::lp

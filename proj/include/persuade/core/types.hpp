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

// Value types for finite Bayesian persuasion games. Everything here is
// validated on construction and immutable afterwards.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "persuade/error.hpp"

namespace persuade {

// Validation tolerance for probability vectors.
inline constexpr double kProbTol = 1e-9;
// Tolerance used when comparing solver outputs (LP vs oracle, obedience).
inline constexpr double kSolverTol = 1e-6;

namespace detail {

inline std::vector<std::string> checked_labels(std::vector<std::string> labels,
                                               const char* what) {
  require(!labels.empty(), ErrorCode::kInvalidArgument,
          std::string(what) + " must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    require(seen.insert(l).second, ErrorCode::kInvalidArgument,
            std::string(what) + " label '" + l + "' is duplicated");
  }
  return labels;
}

inline std::vector<std::string> numbered_labels(std::size_t n, const char* prefix) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace detail

// Ordered, uniquely labelled finite set.
class LabelSet {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == name) return i;
    }
    return std::nullopt;
  }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 protected:
  LabelSet(std::vector<std::string> labels, const char* what)
      : labels_(detail::checked_labels(std::move(labels), what)) {}

 private:
  std::vector<std::string> labels_;
};

class StateSpace : public LabelSet {
 public:
  explicit StateSpace(std::vector<std::string> labels)
      : LabelSet(std::move(labels), "state space") {}
  static StateSpace numbered(std::size_t n) {
    return StateSpace(detail::numbered_labels(n, "w"));
  }
};

class ActionSpace : public LabelSet {
 public:
  explicit ActionSpace(std::vector<std::string> labels)
      : LabelSet(std::move(labels), "action space") {}
  static ActionSpace numbered(std::size_t n) {
    return ActionSpace(detail::numbered_labels(n, "a"));
  }
};

// Probability distribution over states.
class Belief {
 public:
  explicit Belief(std::vector<double> probs) : probs_(std::move(probs)) {
    require(!probs_.empty(), ErrorCode::kInvalidArgument, "belief must be nonempty");
    double total = 0.0;
    for (double p : probs_) {
      require(std::isfinite(p) && p >= -kProbTol && p <= 1.0 + kProbTol,
              ErrorCode::kInvalidArgument, "belief entries must lie in [0,1]");
      total += p;
    }
    require(std::abs(total - 1.0) <= kProbTol, ErrorCode::kInvalidArgument,
            "belief entries must sum to 1 (got " + std::to_string(total) + ")");
    for (double& p : probs_) p = std::clamp(p, 0.0, 1.0);
  }

  static Belief uniform(std::size_t n) {
    return Belief(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  static Belief point_mass(std::size_t n, std::size_t at) {
    std::vector<double> p(n, 0.0);
    p.at(at) = 1.0;
    return Belief(std::move(p));
  }
  // Two-state belief with Pr(state 1) = p.
  static Belief binary(double p) { return Belief({1.0 - p, p}); }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  bool is_point_mass() const {
    for (double p : probs_) {
      if (p >= 1.0 - kProbTol) return true;
    }
    return false;
  }

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<double> probs_;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, ErrorCode::kDimensionMismatch,
            "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                std::to_string(rows_ * cols_));
  }
  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    require(!rows.empty(), ErrorCode::kInvalidArgument, "matrix must have rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      require(rows[r].size() == m.cols_, ErrorCode::kDimensionMismatch,
              "ragged matrix row " + std::to_string(r));
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Payoff table indexed (action, state), entries in [0,1].
class UtilityTable {
 public:
  explicit UtilityTable(Matrix values) : values_(std::move(values)) {
    require(values_.rows() >= 1 && values_.cols() >= 1, ErrorCode::kInvalidArgument,
            "utility table must be nonempty");
    for (std::size_t a = 0; a < values_.rows(); ++a) {
      for (std::size_t w = 0; w < values_.cols(); ++w) {
        double x = values_(a, w);
        require(std::isfinite(x), ErrorCode::kInvalidArgument, "utility entries must be finite");
        require(x >= 0.0 && x <= 1.0, ErrorCode::kInvalidArgument,
                "utility entries must lie in [0,1] (got " + std::to_string(x) + ")");
      }
    }
  }
  static UtilityTable from_rows(const std::vector<std::vector<double>>& rows) {
    return UtilityTable(Matrix::from_rows(rows));
  }

  std::size_t num_actions() const noexcept { return values_.rows(); }
  std::size_t num_states() const noexcept { return values_.cols(); }
  double operator()(std::size_t action, std::size_t state) const {
    return values_(action, state);
  }
  const Matrix& values() const noexcept { return values_; }

  // Expected payoff of `action` when the state is distributed as `probs`.
  double expected(std::size_t action, std::span<const double> probs) const {
    double acc = 0.0;
    for (std::size_t w = 0; w < probs.size(); ++w) acc += probs[w] * values_(action, w);
    return acc;
  }

 private:
  Matrix values_;
};

// pi(s | w): one row per state, one column per signal.
class SignalingScheme {
 public:
  SignalingScheme(std::vector<std::string> signals, Matrix likelihoods,
                  std::optional<std::vector<std::size_t>> recommendations = std::nullopt)
      : signals_(std::move(signals)),
        likelihoods_(std::move(likelihoods)),
        recommendations_(std::move(recommendations)) {
    require(!signals_.empty(), ErrorCode::kInvalidArgument, "scheme needs at least one signal");
    require(likelihoods_.cols() == signals_.size(), ErrorCode::kDimensionMismatch,
            "likelihood columns do not match signal count");
    require(likelihoods_.rows() >= 1, ErrorCode::kInvalidArgument, "scheme needs states");
    for (std::size_t w = 0; w < likelihoods_.rows(); ++w) {
      double total = 0.0;
      for (std::size_t s = 0; s < likelihoods_.cols(); ++s) {
        double p = likelihoods_(w, s);
        require(std::isfinite(p) && p >= -kProbTol && p <= 1.0 + kProbTol,
                ErrorCode::kInvalidArgument, "likelihood entries must lie in [0,1]");
        total += p;
      }
      require(std::abs(total - 1.0) <= kProbTol, ErrorCode::kInvalidArgument,
              "likelihood row " + std::to_string(w) + " sums to " + std::to_string(total));
    }
    if (recommendations_) {
      require(recommendations_->size() == signals_.size(), ErrorCode::kDimensionMismatch,
              "one recommendation per signal required");
    }
  }

  static SignalingScheme uninformative(std::size_t num_states) {
    return SignalingScheme({"s0"}, Matrix(num_states, 1, 1.0));
  }
  static SignalingScheme full_revelation(const StateSpace& states) {
    std::size_t n = states.size();
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return SignalingScheme(states.labels(), std::move(m));
  }

  std::size_t num_states() const noexcept { return likelihoods_.rows(); }
  std::size_t num_signals() const noexcept { return signals_.size(); }
  const std::vector<std::string>& signals() const noexcept { return signals_; }
  double operator()(std::size_t state, std::size_t signal) const {
    return likelihoods_(state, signal);
  }
  const Matrix& likelihoods() const noexcept { return likelihoods_; }
  // Direct-recommendation schemes map each signal to the action it recommends.
  const std::optional<std::vector<std::size_t>>& recommendations() const noexcept {
    return recommendations_;
  }

 private:
  std::vector<std::string> signals_;
  Matrix likelihoods_;
  std::optional<std::vector<std::size_t>> recommendations_;
};

enum class TieBreak {
  // Among receiver-optimal actions, pick the one the sender likes best under
  // the same belief; remaining ties go to the lowest index.
  kSenderPreferred,
  kLowestIndex,
};

struct PersuasionInstance {
  PersuasionInstance(StateSpace states_in, ActionSpace actions_in, Belief prior_in,
                     UtilityTable receiver_u_in, UtilityTable sender_v_in,
                     TieBreak tie_break_in = TieBreak::kSenderPreferred)
      : states(std::move(states_in)),
        actions(std::move(actions_in)),
        prior(std::move(prior_in)),
        receiver_u(std::move(receiver_u_in)),
        sender_v(std::move(sender_v_in)),
        tie_break(tie_break_in) {
    auto dims = [&](const UtilityTable& t, const char* name) {
      require(t.num_actions() == actions.size() && t.num_states() == states.size(),
              ErrorCode::kDimensionMismatch,
              std::string(name) + " is " + std::to_string(t.num_actions()) + "x" +
                  std::to_string(t.num_states()) + ", expected " +
                  std::to_string(actions.size()) + "x" + std::to_string(states.size()));
    };
    require(prior.size() == states.size(), ErrorCode::kDimensionMismatch,
            "prior has " + std::to_string(prior.size()) + " entries for " +
                std::to_string(states.size()) + " states");
    dims(receiver_u, "receiver_u");
    dims(sender_v, "sender_v");
  }

  std::size_t num_states() const noexcept { return states.size(); }
  std::size_t num_actions() const noexcept { return actions.size(); }

  PersuasionInstance with_prior(Belief new_prior) const {
    return PersuasionInstance(states, actions, std::move(new_prior), receiver_u, sender_v,
                              tie_break);
  }

  StateSpace states;
  ActionSpace actions;
  Belief prior;
  UtilityTable receiver_u;
  UtilityTable sender_v;
  TieBreak tie_break;
};

}  // namespace persuade

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

// Optimal signaling for a finite persuasion instance.
//
// The sender's value V(mu0) (the concave closure of v_hat at the prior) is
// computed through the equivalent direct-recommendation program: one signal
// per action, pi(a|w) as variables, and obedience constraints
//
//   sum_w mu0(w) pi(a|w) [u(a,w) - u(a',w)] >= 0     for all a != a'.
//
// Under sender-preferred tie-breaking the LP optimum is attained.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "persuade/core/belief_ops.hpp"
#include "persuade/core/types.hpp"
#include "persuade/solver/simplex.hpp"

namespace persuade {

struct SolveResult {
  SignalingScheme scheme;
  double value;        // V(mu0)
  double prior_value;  // v_hat(mu0)
  double gain;         // V(mu0) - v_hat(mu0)
  std::vector<WeightedPosterior> posteriors;
  std::size_t lp_pivots = 0;
};

struct SignalCheck {
  std::size_t signal;
  double probability;
  Belief posterior;
  std::optional<std::size_t> recommended;
  std::size_t best_response;
  // max_a E[u(a)] - E[u(recommended)]; zero when no recommendation exists.
  double obedience_gap;
};

struct VerifyReport {
  bool plausible;
  double plausibility_error;
  bool obedient;
  double achieved_value;
  std::vector<SignalCheck> signals;

  bool ok() const { return plausible && obedient; }
};

// v_hat(mu) - v_hat(mu0). Negative when the posterior hurts the sender.
inline double gain_at_posterior(const PersuasionInstance& instance, const Belief& posterior) {
  require(posterior.size() == instance.num_states(), ErrorCode::kDimensionMismatch,
          "posterior dimension mismatch");
  return sender_value_at_belief(posterior, instance) -
         sender_value_at_belief(instance.prior, instance);
}

inline VerifyReport verify_scheme(const PersuasionInstance& instance,
                                  const SignalingScheme& scheme) {
  require(scheme.num_states() == instance.num_states(), ErrorCode::kDimensionMismatch,
          "scheme has " + std::to_string(scheme.num_states()) + " states, instance has " +
              std::to_string(instance.num_states()));
  if (scheme.recommendations()) {
    for (std::size_t a : *scheme.recommendations()) {
      require(a < instance.num_actions(), ErrorCode::kDimensionMismatch,
              "recommended action index out of range");
    }
  }
  VerifyReport report{true, 0.0, true, 0.0, {}};
  auto marginal = signal_marginal(instance.prior, scheme);
  std::vector<double> mean(instance.num_states(), 0.0);
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    if (marginal[s] <= 0.0) continue;
    Belief post = posterior_update(instance.prior, scheme, s);
    for (std::size_t w = 0; w < mean.size(); ++w) mean[w] += marginal[s] * post[w];

    std::size_t br = best_response(post, instance);
    std::optional<std::size_t> rec;
    double gap = 0.0;
    if (scheme.recommendations()) {
      rec = (*scheme.recommendations())[s];
      gap = instance.receiver_u.expected(br, post.probs()) -
            instance.receiver_u.expected(*rec, post.probs());
      if (gap > kSolverTol) report.obedient = false;
    }
    report.achieved_value += marginal[s] * instance.sender_v.expected(br, post.probs());
    report.signals.push_back({s, marginal[s], std::move(post), rec, br, gap});
  }
  report.plausibility_error = detail::max_abs_diff(mean, instance.prior.probs());
  report.plausible = report.plausibility_error <= kSolverTol;
  return report;
}

inline SolveResult solve_optimal(const PersuasionInstance& instance) {
  const std::size_t S = instance.num_states();
  const std::size_t A = instance.num_actions();
  const auto& mu = instance.prior;
  const double prior_value = sender_value_at_belief(mu, instance);

  if (mu.is_point_mass() || A == 1) {
    std::size_t a = best_response(mu, instance);
    SignalingScheme scheme({instance.actions.label(a)}, Matrix(S, 1, 1.0),
                           std::vector<std::size_t>{a});
    auto posts = induced_posteriors(mu, scheme);
    return {std::move(scheme), prior_value, prior_value, 0.0, std::move(posts), 0};
  }

  auto var = [A](std::size_t w, std::size_t a) { return w * A + a; };
  lp::Problem problem;
  problem.num_vars = S * A;
  problem.objective.assign(S * A, 0.0);
  for (std::size_t w = 0; w < S; ++w) {
    for (std::size_t a = 0; a < A; ++a) {
      problem.objective[var(w, a)] = mu[w] * instance.sender_v(a, w);
    }
  }
  for (std::size_t w = 0; w < S; ++w) {
    std::vector<double> row(S * A, 0.0);
    for (std::size_t a = 0; a < A; ++a) row[var(w, a)] = 1.0;
    problem.add(std::move(row), lp::Relation::kEqual, 1.0);
  }
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t alt = 0; alt < A; ++alt) {
      if (alt == a) continue;
      std::vector<double> row(S * A, 0.0);
      for (std::size_t w = 0; w < S; ++w) {
        row[var(w, a)] = mu[w] * (instance.receiver_u(a, w) - instance.receiver_u(alt, w));
      }
      problem.add(std::move(row), lp::Relation::kGreaterEqual, 0.0);
    }
  }

  lp::Solution sol = lp::solve(problem);
  if (sol.status == lp::Status::kInfeasible) {
    fail(ErrorCode::kInfeasibleInstance,
         "internal error: obedience program reported infeasible for a valid instance");
  }
  if (sol.status != lp::Status::kOptimal) {
    fail(ErrorCode::kNumericFailure, "simplex did not converge");
  }

  // Clean the LP solution into a row-stochastic matrix.
  Matrix x(S, A, 0.0);
  for (std::size_t w = 0; w < S; ++w) {
    double total = 0.0;
    for (std::size_t a = 0; a < A; ++a) {
      x(w, a) = std::clamp(sol.x[var(w, a)], 0.0, 1.0);
      total += x(w, a);
    }
    require(total > 0.5, ErrorCode::kNumericFailure, "degenerate LP row");
    for (std::size_t a = 0; a < A; ++a) x(w, a) /= total;
  }

  // Keep only recommendations sent with positive probability.
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < A; ++a) {
    double m = 0.0;
    for (std::size_t w = 0; w < S; ++w) m += mu[w] * x(w, a);
    if (m > 1e-12) kept.push_back(a);
  }
  require(!kept.empty(), ErrorCode::kNumericFailure, "no signal with positive probability");

  Matrix likelihoods(S, kept.size(), 0.0);
  std::vector<std::string> names;
  for (std::size_t a : kept) names.push_back(instance.actions.label(a));
  for (std::size_t w = 0; w < S; ++w) {
    double total = 0.0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      likelihoods(w, k) = x(w, kept[k]);
      total += likelihoods(w, k);
    }
    if (total <= 1e-12) {
      // Only reachable for zero-prior states; any row is consistent.
      likelihoods(w, 0) = 1.0;
      total = 1.0;
    }
    for (std::size_t k = 0; k < kept.size(); ++k) likelihoods(w, k) /= total;
  }
  SignalingScheme scheme(std::move(names), std::move(likelihoods), kept);

  double value = 0.0;
  for (std::size_t w = 0; w < S; ++w) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      value += mu[w] * scheme(w, k) * instance.sender_v(kept[k], w);
    }
  }
  require(value >= prior_value - kSolverTol, ErrorCode::kNumericFailure,
          "LP value " + std::to_string(value) + " below no-information value " +
              std::to_string(prior_value));
  value = std::max(value, prior_value);

  auto posts = induced_posteriors(mu, scheme);
  return {std::move(scheme), value, prior_value, value - prior_value, std::move(posts),
          sol.pivots};
}

}  // namespace persuade

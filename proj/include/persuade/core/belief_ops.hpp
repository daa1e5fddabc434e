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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "persuade/core/types.hpp"
#include "persuade/error.hpp"

namespace persuade {

// Two expected utilities closer than this are treated as a receiver tie.
inline constexpr double kTieTol = 1e-9;

namespace detail {

inline void check_scheme_dims(const Belief& prior, const SignalingScheme& scheme) {
  require(prior.size() == scheme.num_states(), ErrorCode::kDimensionMismatch,
          "prior has " + std::to_string(prior.size()) + " states, scheme has " +
              std::to_string(scheme.num_states()));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace detail

// Pr(s) = sum_w prior(w) pi(s|w) for every signal s.
inline std::vector<double> signal_marginal(const Belief& prior, const SignalingScheme& scheme) {
  detail::check_scheme_dims(prior, scheme);
  std::vector<double> out(scheme.num_signals(), 0.0);
  for (std::size_t w = 0; w < prior.size(); ++w) {
    for (std::size_t s = 0; s < scheme.num_signals(); ++s) out[s] += prior[w] * scheme(w, s);
  }
  return out;
}

// Bayes' rule: mu_s(w) = pi(s|w) mu0(w) / Pr(s).
inline Belief posterior_update(const Belief& prior, const SignalingScheme& scheme,
                               std::size_t signal) {
  detail::check_scheme_dims(prior, scheme);
  require(signal < scheme.num_signals(), ErrorCode::kDimensionMismatch,
          "signal index " + std::to_string(signal) + " out of range");
  std::vector<double> joint(prior.size());
  double marginal = 0.0;
  for (std::size_t w = 0; w < prior.size(); ++w) {
    joint[w] = prior[w] * scheme(w, signal);
    marginal += joint[w];
  }
  require(marginal > 0.0, ErrorCode::kZeroProbabilitySignal,
          "signal '" + scheme.signals()[signal] + "' has zero probability under the prior");
  for (double& j : joint) j /= marginal;
  return Belief(std::move(joint));
}

struct WeightedPosterior {
  Belief posterior;
  double probability;
  // Signals that induce this posterior (several after merging).
  std::vector<std::size_t> signals;
};

struct InducedPosteriorOptions {
  bool merge_identical = true;
  double merge_tol = kProbTol;
};

// Distribution over posteriors induced by `scheme`; zero-probability signals
// are dropped.
inline std::vector<WeightedPosterior> induced_posteriors(const Belief& prior,
                                                         const SignalingScheme& scheme,
                                                         InducedPosteriorOptions opts = {}) {
  auto marginal = signal_marginal(prior, scheme);
  std::vector<WeightedPosterior> out;
  for (std::size_t s = 0; s < scheme.num_signals(); ++s) {
    if (marginal[s] <= 0.0) continue;
    Belief post = posterior_update(prior, scheme, s);
    if (opts.merge_identical) {
      bool merged = false;
      for (auto& existing : out) {
        if (detail::max_abs_diff(existing.posterior.probs(), post.probs()) <= opts.merge_tol) {
          existing.probability += marginal[s];
          existing.signals.push_back(s);
          merged = true;
          break;
        }
      }
      if (merged) continue;
    }
    out.push_back({std::move(post), marginal[s], {s}});
  }
  return out;
}

// Receiver's optimal action. The sender-preferred rule needs `sender_v`.
inline std::size_t best_response(const Belief& belief, const UtilityTable& receiver_u,
                                 TieBreak rule = TieBreak::kLowestIndex,
                                 const UtilityTable* sender_v = nullptr) {
  require(belief.size() == receiver_u.num_states(), ErrorCode::kDimensionMismatch,
          "belief/utility state count mismatch");
  require(rule != TieBreak::kSenderPreferred || sender_v != nullptr,
          ErrorCode::kInvalidArgument, "sender-preferred tie-break needs sender utilities");
  if (sender_v) {
    require(sender_v->num_states() == belief.size() &&
                sender_v->num_actions() == receiver_u.num_actions(),
            ErrorCode::kDimensionMismatch, "sender utility dimensions mismatch");
  }
  double best = -1.0;
  for (std::size_t a = 0; a < receiver_u.num_actions(); ++a) {
    best = std::max(best, receiver_u.expected(a, belief.probs()));
  }
  std::size_t chosen = receiver_u.num_actions();
  double chosen_sender = -1.0;
  for (std::size_t a = 0; a < receiver_u.num_actions(); ++a) {
    if (receiver_u.expected(a, belief.probs()) < best - kTieTol) continue;
    if (rule == TieBreak::kLowestIndex) return a;
    double sv = sender_v->expected(a, belief.probs());
    if (chosen == receiver_u.num_actions() || sv > chosen_sender + kTieTol) {
      chosen = a;
      chosen_sender = sv;
    }
  }
  return chosen;
}

inline std::size_t best_response(const Belief& belief, const PersuasionInstance& instance) {
  return best_response(belief, instance.receiver_u, instance.tie_break, &instance.sender_v);
}

// v_hat(mu): sender's expected payoff when the receiver best-responds to mu.
inline double sender_value_at_belief(const Belief& belief, const PersuasionInstance& instance) {
  std::size_t a = best_response(belief, instance);
  return instance.sender_v.expected(a, belief.probs());
}

}  // namespace persuade

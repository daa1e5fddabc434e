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

// Discrete-time simulator for the two-state dynamic persuasion model.
//
// The state starts in 0 (or 1 with probability initial_belief) and jumps to
// the absorbing state 1 at Poisson rate lambda. A myopic receiver plays
// a_t = 0 iff mu_t <= p_star, where mu_t is the public belief that the state
// is 1. The sender earns 1 per unit time while a_t = 0.
//
// Step k covers [k dt, (k+1) dt): the state transitions (k > 0), the public
// belief drifts, the sender's policy emits a signal, the receiver updates and
// acts, and payoff accrues.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/error.hpp"

namespace persuade::dynamic {

enum class Policy { kNone, kFull, kDelayed };
enum class Signal { kSilence, kDisclose };

inline std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::kNone: return "none";
    case Policy::kFull: return "full";
    case Policy::kDelayed: return "delayed";
  }
  return "?";
}

inline Policy parse_policy(std::string_view s) {
  if (s == "none") return Policy::kNone;
  if (s == "full") return Policy::kFull;
  if (s == "delayed") return Policy::kDelayed;
  fail(ErrorCode::kInvalidConfig, "unknown policy '" + std::string(s) + "'");
}

struct DynamicConfig {
  double lambda = 1.0;
  double p_star = 0.5;
  double dt = 0.01;
  double horizon = 5.0;
  double initial_belief = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::kInvalidConfig, "lambda must be > 0");
    require(p_star > 0.0 && p_star < 1.0, ErrorCode::kInvalidConfig, "p_star must lie in (0,1)");
    require(std::isfinite(dt) && dt > 0.0, ErrorCode::kInvalidConfig, "dt must be > 0");
    require(std::isfinite(horizon) && horizon >= dt, ErrorCode::kInvalidConfig,
            "horizon must be >= dt");
    require(initial_belief >= 0.0 && initial_belief <= 1.0, ErrorCode::kInvalidConfig,
            "initial_belief must lie in [0,1]");
  }

  std::size_t num_steps() const {
    return static_cast<std::size_t>(std::llround(horizon / dt));
  }
};

struct Step {
  double time;
  int true_state;
  double prior_belief;     // belief after drift, before the signal
  double belief;           // public posterior after the signal
  double disclosure_prob;  // Pr(disclose | state) used this step under the policy
  Signal signal;
  int action;
  // |E[posterior | pre-signal info] - prior_belief|; zero for deterministic signals.
  double martingale_error;
};

struct TrajectoryRecord {
  std::vector<Step> steps;
  double sender_payoff = 0.0;
};

// Belief that the state is 1 after dt time units without news.
inline double drift_belief(double mu, double lambda, double dt) {
  return mu + (1.0 - mu) * (1.0 - std::exp(-lambda * dt));
}

// Probability of disclosing state 1 that leaves the silence posterior at
// exactly p_star: solves mu (1 - z) / (mu (1 - z) + 1 - mu) = p_star.
inline double delayed_disclosure_prob(double mu, double p_star) {
  require(mu >= p_star, ErrorCode::kBelowThreshold,
          "belief " + std::to_string(mu) + " is below threshold " + std::to_string(p_star));
  if (mu >= 1.0) return 1.0;
  double z = 1.0 - p_star * (1.0 - mu) / (mu * (1.0 - p_star));
  return std::clamp(z, 0.0, 1.0);
}

namespace detail {

inline std::uint64_t run_seed(std::uint64_t seed, std::size_t run, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

constexpr double kPinTol = 1e-12;

}  // namespace detail

// One trajectory. The state path depends only on (seed, run), so different
// policies see common random numbers.
inline TrajectoryRecord simulate_one(const DynamicConfig& cfg, Policy policy, std::size_t run) {
  cfg.validate();
  std::mt19937_64 state_rng(detail::run_seed(cfg.seed, run, 0));
  std::mt19937_64 signal_rng(detail::run_seed(cfg.seed, run, 1));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double jump = 1.0 - std::exp(-cfg.lambda * cfg.dt);
  const std::size_t steps = cfg.num_steps();
  TrajectoryRecord rec;
  rec.steps.reserve(steps);

  int state = unif(state_rng) < cfg.initial_belief ? 1 : 0;
  double mu = cfg.initial_belief;
  for (std::size_t k = 0; k < steps; ++k) {
    if (k > 0) {
      if (state == 0 && unif(state_rng) < jump) state = 1;
      mu = drift_belief(mu, cfg.lambda, cfg.dt);
    }
    Step st{};
    st.time = static_cast<double>(k) * cfg.dt;
    st.true_state = state;
    st.prior_belief = mu;
    st.signal = Signal::kSilence;

    switch (policy) {
      case Policy::kNone:
        break;
      case Policy::kFull:
        // State is revealed every step: belief jumps to the state.
        st.disclosure_prob = 1.0;
        if (state == 1) st.signal = Signal::kDisclose;
        mu = state == 1 ? 1.0 : 0.0;
        st.martingale_error = 0.0;  // E[posterior] = mu_prior by construction
        break;
      case Policy::kDelayed:
        if (mu > cfg.p_star) {
          double z = delayed_disclosure_prob(mu, cfg.p_star);
          st.disclosure_prob = z;
          double p_disclose = mu * z;
          double silence_post = p_disclose < 1.0 ? mu * (1.0 - z) / (1.0 - p_disclose) : cfg.p_star;
          double averaged = p_disclose * 1.0 + (1.0 - p_disclose) * silence_post;
          st.martingale_error = std::abs(averaged - mu);
          if (std::abs(silence_post - cfg.p_star) <= detail::kPinTol) silence_post = cfg.p_star;
          bool disclose = state == 1 && unif(signal_rng) < z;
          st.signal = disclose ? Signal::kDisclose : Signal::kSilence;
          mu = disclose ? 1.0 : silence_post;
        }
        break;
    }
    st.belief = mu;
    st.action = mu <= cfg.p_star ? 0 : 1;
    if (st.action == 0) rec.sender_payoff += cfg.dt;
    rec.steps.push_back(st);
  }
  return rec;
}

inline std::vector<TrajectoryRecord> simulate(const DynamicConfig& cfg, Policy policy,
                                              std::size_t runs) {
  cfg.validate();
  require(runs >= 1, ErrorCode::kInvalidConfig, "runs must be >= 1");
  std::vector<TrajectoryRecord> out;
  out.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) out.push_back(simulate_one(cfg, policy, r));
  return out;
}

struct PolicySummary {
  Policy policy;
  double mean_payoff;
  double stderr_payoff;
  std::size_t runs;
  double max_martingale_error;
  // Largest |silence posterior - p_star| at steps where the delayed policy was active.
  double max_pin_error;
  bool threshold_rule_holds;
  bool absorbing_holds;
};

namespace detail {

inline PolicySummary summarize_runs(const DynamicConfig& cfg, Policy policy, std::size_t runs) {
  PolicySummary s{policy, 0.0, 0.0, runs, 0.0, 0.0, true, true};
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t r = 0; r < runs; ++r) {
    TrajectoryRecord tr = simulate_one(cfg, policy, r);
    sum += tr.sender_payoff;
    sum_sq += tr.sender_payoff * tr.sender_payoff;
    int prev_state = 0;
    for (const auto& st : tr.steps) {
      s.max_martingale_error = std::max(s.max_martingale_error, st.martingale_error);
      if (policy == Policy::kDelayed && st.prior_belief > cfg.p_star &&
          st.signal == Signal::kSilence) {
        s.max_pin_error = std::max(s.max_pin_error, std::abs(st.belief - cfg.p_star));
      }
      if ((st.action == 0) != (st.belief <= cfg.p_star)) s.threshold_rule_holds = false;
      if (prev_state == 1 && st.true_state != 1) s.absorbing_holds = false;
      prev_state = st.true_state;
    }
  }
  double n = static_cast<double>(runs);
  s.mean_payoff = sum / n;
  if (runs > 1) {
    double var = (sum_sq - n * s.mean_payoff * s.mean_payoff) / (n - 1.0);
    s.stderr_payoff = std::sqrt(std::max(var, 0.0) / n);
  }
  return s;
}

}  // namespace detail

// Monte Carlo comparison of the three policies over the same state paths.
inline std::vector<PolicySummary> compare_policies(const DynamicConfig& cfg, std::size_t runs) {
  cfg.validate();
  require(runs >= 2, ErrorCode::kInvalidConfig, "compare_policies needs runs >= 2");
  std::vector<PolicySummary> out;
  for (Policy p : {Policy::kNone, Policy::kFull, Policy::kDelayed}) {
    out.push_back(detail::summarize_runs(cfg, p, runs));
  }
  return out;
}

inline PolicySummary summarize_policy(const DynamicConfig& cfg, Policy policy, std::size_t runs) {
  cfg.validate();
  require(runs >= 1, ErrorCode::kInvalidConfig, "runs must be >= 1");
  return detail::summarize_runs(cfg, policy, runs);
}

}  // namespace persuade::dynamic

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

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace persuade {
namespace {

using testing::judge_instance;

SignalingScheme scheme(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> names;
  for (std::size_t s = 0; s < rows.front().size(); ++s) names.push_back("s" + std::to_string(s));
  return SignalingScheme(names, Matrix::from_rows(rows));
}

void expect_belief(const Belief& b, std::vector<double> want, double tol = 1e-12) {
  ASSERT_EQ(b.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(b[i], want[i], tol) << "component " << i;
}

TEST(Belief, RejectsInvalidVectors) {
  EXPECT_THROW(Belief({0.5, 0.6}), Error);
  EXPECT_THROW(Belief({-0.1, 1.1}), Error);
  EXPECT_THROW(Belief(std::vector<double>{}), Error);
}

TEST(UtilityTable, RejectsEntriesOutsideUnitInterval) {
  EXPECT_THROW(UtilityTable::from_rows({{0.0, -0.5}}), Error);
  EXPECT_THROW(UtilityTable::from_rows({{0.0, 1.5}}), Error);
}

TEST(PosteriorUpdate, UninformativeSchemeKeepsPrior) {
  Belief prior({0.2, 0.5, 0.3});
  auto s = scheme({{0.4, 0.6}, {0.4, 0.6}, {0.4, 0.6}});
  for (std::size_t sig = 0; sig < 2; ++sig) expect_belief(posterior_update(prior, s, sig), {0.2, 0.5, 0.3});
}

TEST(PosteriorUpdate, FullRevelationGivesPointMass) {
  auto s = scheme({{1, 0}, {0, 1}});
  expect_belief(posterior_update(Belief({0.3, 0.7}), s, 0), {1.0, 0.0});
}

TEST(PosteriorUpdate, HandComputedJudgeSignal) {
  auto s = scheme({{1.0, 0.0}, {4.0 / 7.0, 3.0 / 7.0}});
  expect_belief(posterior_update(Belief({0.3, 0.7}), s, 0), {3.0 / 7.0, 4.0 / 7.0});
}

TEST(PosteriorUpdate, ZeroProbabilitySignalFails) {
  auto s = scheme({{1, 0}, {1, 0}});
  try {
    posterior_update(Belief({0.5, 0.5}), s, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroProbabilitySignal);
  }
}

TEST(PosteriorUpdate, DimensionMismatchFails) {
  auto s = scheme({{1, 0}, {0, 1}});
  EXPECT_THROW(posterior_update(Belief::uniform(3), s, 0), Error);
}

TEST(SignalMarginal, Examples) {
  auto id = scheme({{1, 0}, {0, 1}});
  auto m = signal_marginal(Belief::uniform(2), id);
  EXPECT_NEAR(m[0], 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);

  auto judge = scheme({{1.0, 0.0}, {4.0 / 7.0, 3.0 / 7.0}});
  EXPECT_NEAR(signal_marginal(Belief({0.3, 0.7}), judge)[0], 0.7, 1e-12);

  auto single = scheme({{1.0}, {1.0}, {1.0}});
  auto one = signal_marginal(Belief({0.1, 0.2, 0.7}), single);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], 1.0, 1e-15);
}

TEST(InducedPosteriors, FullRevelation) {
  auto ps = induced_posteriors(Belief({0.3, 0.7}), scheme({{1, 0}, {0, 1}}));
  ASSERT_EQ(ps.size(), 2u);
  expect_belief(ps[0].posterior, {1, 0});
  EXPECT_NEAR(ps[0].probability, 0.3, 1e-15);
  expect_belief(ps[1].posterior, {0, 1});
  EXPECT_NEAR(ps[1].probability, 0.7, 1e-15);
}

TEST(InducedPosteriors, UninformativeMergesToPrior) {
  auto ps = induced_posteriors(Belief({0.3, 0.7}), scheme({{0.25, 0.75}, {0.25, 0.75}}));
  ASSERT_EQ(ps.size(), 1u);
  expect_belief(ps[0].posterior, {0.3, 0.7});
  EXPECT_NEAR(ps[0].probability, 1.0, 1e-15);
  EXPECT_EQ(ps[0].signals.size(), 2u);

  auto unmerged = induced_posteriors(Belief({0.3, 0.7}), scheme({{0.25, 0.75}, {0.25, 0.75}}),
                                     {.merge_identical = false});
  EXPECT_EQ(unmerged.size(), 2u);
}

TEST(InducedPosteriors, JudgeScheme) {
  // Prior Pr(guilty)=0.3; convict always when guilty and w.p. 3/7 when innocent.
  auto ps = induced_posteriors(Belief::binary(0.3), scheme({{4.0 / 7.0, 3.0 / 7.0}, {0.0, 1.0}}));
  ASSERT_EQ(ps.size(), 2u);
  expect_belief(ps[0].posterior, {1.0, 0.0});
  EXPECT_NEAR(ps[0].probability, 0.4, 1e-12);
  expect_belief(ps[1].posterior, {0.5, 0.5});
  EXPECT_NEAR(ps[1].probability, 0.6, 1e-12);
}

TEST(InducedPosteriors, ZeroProbabilitySignalsOmitted) {
  auto ps = induced_posteriors(Belief({1.0, 0.0}), scheme({{1, 0}, {0, 1}}));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].signals, std::vector<std::size_t>{0});
}

TEST(BestResponse, SingleAction) {
  auto u = UtilityTable::from_rows({{0.2, 0.9, 0.4}});
  EXPECT_EQ(best_response(Belief::uniform(3), u), 0u);
}

TEST(BestResponse, JudgeGame) {
  auto inst = judge_instance();
  EXPECT_EQ(best_response(Belief::binary(0.3), inst), 0u);
  EXPECT_EQ(best_response(Belief::binary(0.5), inst), 1u);
  // The lowest-index rule resolves the same tie toward acquit.
  EXPECT_EQ(best_response(Belief::binary(0.5), inst.receiver_u, TieBreak::kLowestIndex), 0u);
}

TEST(BestResponse, SenderPreferredNeedsSenderUtility) {
  auto u = UtilityTable::from_rows({{1, 0}, {0, 1}});
  EXPECT_THROW(best_response(Belief::binary(0.5), u, TieBreak::kSenderPreferred), Error);
}

TEST(SenderValue, Examples) {
  auto inst = judge_instance();
  EXPECT_DOUBLE_EQ(sender_value_at_belief(Belief::binary(0.3), inst), 0.0);
  EXPECT_DOUBLE_EQ(sender_value_at_belief(Belief::binary(0.5), inst), 1.0);

  PersuasionInstance flat(StateSpace::numbered(3), ActionSpace::numbered(2), Belief::uniform(3),
                          UtilityTable::from_rows({{0.1, 0.8, 0.3}, {0.6, 0.2, 0.9}}),
                          UtilityTable::from_rows({{0.35, 0.35, 0.35}, {0.35, 0.35, 0.35}}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(sender_value_at_belief(Belief(testing::random_simplex(rng, 3)), flat), 0.35, 1e-12);
  }
}

// ---- properties ------------------------------------------------------------

TEST(CoreProperty, BayesPlausibility) {
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + trial % 4, k = 1 + trial % 5;
    Belief prior(testing::random_simplex(rng, n));
    auto s = testing::random_scheme(rng, n, k);
    std::vector<double> avg(n, 0.0);
    for (const auto& wp : induced_posteriors(prior, s)) {
      for (std::size_t i = 0; i < n; ++i) avg[i] += wp.probability * wp.posterior[i];
    }
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(avg[i] - prior[i]));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(CoreProperty, BestResponseAffineInvariance) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> scale(0.05, 0.5), shift(0.0, 0.4);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + trial % 3, a = 2 + trial % 3;
    auto u = testing::random_utility(rng, a, n);
    double k = scale(rng), c = shift(rng);
    std::vector<std::vector<double>> rows = u.values().to_rows();
    for (auto& r : rows)
      for (auto& x : r) x = k * x + c;
    auto u2 = UtilityTable::from_rows(rows);
    Belief b(testing::random_simplex(rng, n));
    EXPECT_EQ(best_response(b, u), best_response(b, u2));
  }
}

TEST(CoreProperty, SenderValuePiecewiseLinear) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = testing::random_instance(rng, 2 + trial % 2, 2 + trial % 3);
    Belief b1(testing::random_simplex(rng, inst.num_states()));
    Belief b2(testing::random_simplex(rng, inst.num_states()));
    auto mix = [&](double w) {
      std::vector<double> p(inst.num_states());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = w * b1[i] + (1 - w) * b2[i];
      return Belief(p);
    };
    double w = t(rng);
    Belief m = mix(w);
    std::size_t a = best_response(b1, inst);
    // Only constant-response segments are linear.
    if (best_response(b2, inst) != a || best_response(m, inst) != a) continue;
    ++checked;
    double lin = w * sender_value_at_belief(b1, inst) + (1 - w) * sender_value_at_belief(b2, inst);
    EXPECT_NEAR(sender_value_at_belief(m, inst), lin, 1e-12);
  }
  EXPECT_GT(checked, 50);
}

// ---- instance files --------------------------------------------------------

TEST(InstanceJson, RoundTrip) {
  auto inst = judge_instance();
  auto back = instance_from_json(instance_to_json(inst));
  EXPECT_EQ(back.states.labels(), inst.states.labels());
  EXPECT_EQ(back.actions.labels(), inst.actions.labels());
  EXPECT_EQ(back.receiver_u.values().to_rows(), inst.receiver_u.values().to_rows());
  EXPECT_EQ(back.sender_v.values().to_rows(), inst.sender_v.values().to_rows());
  EXPECT_EQ(back.tie_break, inst.tie_break);
}

TEST(InstanceJson, ShippedJudgeFileLoads) {
  auto inst = load_instance(testing::source_path("data/instances/judge.json"));
  EXPECT_EQ(inst.states.labels(), (std::vector<std::string>{"innocent", "guilty"}));
  EXPECT_DOUBLE_EQ(inst.prior[1], 0.3);
}

TEST(InstanceJson, MalformedFileReportsLineAndColumn) {
  auto dir = testing::scratch_dir("instance_json");
  write_file_atomic(dir / "bad.json", "{\n  \"states\": [\"a\", \"b\"],\n  \"prior\": [0.5 0.5]\n}\n");
  try {
    load_instance(dir / "bad.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("bad.json:3:"), std::string::npos) << e.what();
  }
}

TEST(InstanceJson, MissingFieldAndNegativeUtility) {
  json doc = instance_to_json(judge_instance());
  doc.erase("sender_v");
  EXPECT_THROW(instance_from_json(doc), Error);
  doc = instance_to_json(judge_instance());
  doc["receiver_u"][0][0] = -1.0;
  EXPECT_THROW(instance_from_json(doc), Error);
}

TEST(Io, ContentHashIsStable) {
  EXPECT_EQ(fnv1a64(""), 14695981039346656037ULL);
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(content_hash("abc"), content_hash("abc"));
  EXPECT_NE(content_hash("abc"), content_hash("abd"));
}

}  // namespace
}  // namespace persuade

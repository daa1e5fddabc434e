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

#include <cmath>
#include <random>
#include <set>

#include "test_support.hpp"

namespace persuade::agents {
namespace {

const std::string kValidSender = "<opinion>O</opinion><thinking>T</thinking><argument>Arg.</argument>";
const std::string kValidReceiver = "<score>5</score><opinion>O</opinion><thinking>T</thinking><question>Q?</question>";

TEST(LlmComplete, ReturnsCannedReply) {
  auto b = ScriptedBackend::from_texts({"canned reply"});
  EXPECT_EQ(llm_complete(b, {ChatMessage(Role::kUser, "hi")}), "canned reply");
  ASSERT_EQ(b.requests().size(), 1u);
  EXPECT_FALSE(b.requests()[0].temperature.has_value());
  EXPECT_THROW(llm_complete(b, {ChatMessage(Role::kUser, "again")}), Error);
}

TEST(ChatMessage, RejectsEmptyContent) { EXPECT_THROW(ChatMessage(Role::kUser, ""), Error); }

TEST(LlmSender, RendersModePromptAndParses) {
  auto b = ScriptedBackend::shared({kValidSender, kValidSender});
  LlmSender stat(b, Mode::kStatic, {120, 0.3});
  EXPECT_EQ(stat.argue("Claim.", "Receiver: hm").argument, "Arg.");
  LlmSender dyn(b, Mode::kDynamic);
  dyn.argue("Claim.", "Receiver: hm");
  auto reqs = b->requests();
  EXPECT_EQ(reqs[0].messages[0].content, render_prompt(sender_static_template(), "Claim.", "", 120)[0].content);
  EXPECT_EQ(reqs[1].messages[0].content, render_prompt(sender_dynamic_template(), "Claim.", "")[0].content);
  EXPECT_NE(reqs[0].messages.back().content.find("120 words."), std::string::npos);
  EXPECT_EQ(reqs[0].temperature, 0.3);
}

TEST(LlmReceiver, ReasksOnceThenSucceeds) {
  auto b = ScriptedBackend::shared({"no tags here", kValidReceiver});
  LlmReceiver r(b);
  EXPECT_EQ(r.respond("Claim.", "").score, 5);
  auto reqs = b->requests();
  ASSERT_EQ(reqs.size(), 2u);
  const auto& msgs = reqs[1].messages;
  ASSERT_EQ(msgs.size(), reqs[0].messages.size() + 2);
  EXPECT_EQ(msgs[msgs.size() - 2].role, Role::kAssistant);
  EXPECT_EQ(msgs[msgs.size() - 2].content, "no tags here");
  EXPECT_EQ(msgs.back().content, format_reminder("<score>, <opinion>, <thinking>, <question>"));
}

TEST(LlmReceiver, SecondFailureIsAgentFailure) {
  auto b = ScriptedBackend::shared(
      {"<score>9</score><opinion>o</opinion><thinking>t</thinking>", "still bad"});
  LlmReceiver r(b);
  try {
    r.respond("Claim.", "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAgentFailure);
  }
}

TEST(LlmSender, TransportErrorsAreNotReasked) {
  auto b = std::make_shared<ScriptedBackend>(std::vector<Completion>{});
  LlmSender s(b, Mode::kStatic);
  try {
    s.argue("Claim.", "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransport);
  }
  EXPECT_EQ(b->requests().size(), 1u);
}

TEST(RoundTrip, RenderStubCompleteParseReproducesFields) {
  auto b = ScriptedBackend::shared({kValidSender, kValidReceiver});
  auto s = LlmSender(b, Mode::kDynamic).argue("X", "");
  EXPECT_EQ(s.opinion, "O");
  EXPECT_EQ(s.thinking, "T");
  EXPECT_EQ(s.argument, "Arg.");
  auto r = LlmReceiver(b).respond("X", "");
  EXPECT_EQ(r.score, 5);
  EXPECT_EQ(r.question, "Q?");
}

// ---- prior probe -----------------------------------------------------------

TEST(ProbePrior, Examples) {
  ScriptedBackend b({{"yes", std::vector<TokenLogprob>{{"yes", 0.0}}},
                     {"Yes", std::vector<TokenLogprob>{{"no", -0.7}, {" Yes", -0.693}}},
                     {"no", std::vector<TokenLogprob>{{"no", -0.1}}},
                     {"yes", std::nullopt}});
  EXPECT_DOUBLE_EQ(probe_prior_confidence(b, "c"), 1.0);
  EXPECT_NEAR(probe_prior_confidence(b, "c"), 0.5, 0.005);
  try {
    probe_prior_confidence(b, "c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTokenNotFound);
  }
  try {
    probe_prior_confidence(b, "c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLogprobsUnsupported);
  }
  auto reqs = b.requests();
  EXPECT_TRUE(reqs[0].logprobs);
  EXPECT_EQ(reqs[0].max_tokens, 1);
  EXPECT_EQ(reqs[0].temperature, 0.0);
  EXPECT_NE(reqs[0].messages[0].content.find("Here is a claim:\nc\n"), std::string::npos);
}

// ---- stub backend ----------------------------------------------------------

TEST(StubBackend, DeterministicAndWellFormed) {
  auto a = std::make_shared<StubBackend>(3, "a");
  auto b = std::make_shared<StubBackend>(3, "b");
  LlmSender sa(a, Mode::kDynamic), sb(b, Mode::kDynamic);
  LlmReceiver ra(a), rb(b);
  auto x = sa.argue("Taxes should fall.", "Receiver: unsure");
  auto y = sb.argue("Taxes should fall.", "Receiver: unsure");
  EXPECT_EQ(x.argument, y.argument);
  EXPECT_NE(x.argument.find("Round 1"), std::string::npos);
  auto base = ra.respond("Taxes should fall.", "");
  EXPECT_EQ(base.score, a->baseline_score("Taxes should fall."));
  EXPECT_GE(base.score, 2);
  EXPECT_LE(base.score, 4);
  EXPECT_EQ(rb.respond("Taxes should fall.", "").score, base.score);
  EXPECT_FALSE(base.question.empty());
}

TEST(StubBackend, SeedChangesOutputs) {
  std::set<int> scores;
  std::set<std::string> args;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    auto s = std::make_shared<StubBackend>(seed);
    scores.insert(LlmReceiver(s).respond("A claim.", "").score);
    args.insert(LlmSender(s, Mode::kStatic).argue("A claim.", "").argument);
  }
  EXPECT_GT(scores.size(), 1u);
  EXPECT_GT(args.size(), 1u);
}

TEST(StubBackend, ProbeConfidenceInUnitInterval) {
  StubBackend s(0);
  double p = probe_prior_confidence(s, "Some claim.");
  EXPECT_NEAR(p, s.prior_confidence("Some claim."), 1e-12);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
}

// ---- loss view -------------------------------------------------------------

TEST(ExactReceiver, LossArgminMatchesBestResponse) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + trial % 3, a = 2 + trial % 4;
    auto u = testing::random_utility(rng, a, n);
    PersuasionInstance inst(StateSpace::numbered(n), ActionSpace::numbered(a),
                            Belief(testing::random_simplex(rng, n)), u, testing::random_utility(rng, a, n),
                            TieBreak::kLowestIndex);
    Belief b(testing::random_simplex(rng, n));
    EXPECT_EQ(exact_receiver_act(b, inst), argmin_expected_loss(b, loss_view(u)));
  }
}

TEST(ExactReceiver, JudgeGame) {
  auto inst = testing::judge_instance();
  EXPECT_EQ(exact_receiver_act(Belief::binary(0.3), inst), 0u);
  EXPECT_EQ(exact_receiver_act(Belief::binary(0.7), inst), 1u);
}

// ---- endpoint profiles -----------------------------------------------------

TEST(EndpointConfig, ParsesProfileAndRejectsSecrets) {
  auto c = endpoint_config_from_json(
      json{{"base_url", "http://localhost:8000/v1"}, {"model_name", "m"}, {"api_key_env", "X_KEY"}, {"max_retries", 2}},
      "p");
  EXPECT_EQ(c.model_name, "m");
  EXPECT_EQ(c.max_retries, 2);
  EXPECT_DOUBLE_EQ(c.temperature, 0.7);
  for (const char* secret : {"api_key", "token", "authorization", "key"}) {
    json j = {{"base_url", "http://h"}, {"model_name", "m"}, {secret, "sk-live"}};
    try {
      endpoint_config_from_json(j, "p");
      FAIL() << secret;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
      EXPECT_EQ(std::string(e.what()).find("sk-live"), std::string::npos);
    }
  }
  EXPECT_THROW(endpoint_config_from_json(json{{"model_name", "m"}}, "p"), Error);
  EXPECT_THROW(endpoint_config_from_json(json{{"base_url", "http://h"}, {"model_name", "m"}, {"max_retries", -1}}, "p"),
               Error);
}

TEST(EndpointConfig, MissingKeyVariableFailsBeforeAnyRequest) {
  ::unsetenv("PERSUADE_TEST_UNSET_KEY");
  LLMEndpointConfig c;
  c.base_url = "http://127.0.0.1:9";
  c.model_name = "m";
  c.api_key_env = "PERSUADE_TEST_UNSET_KEY";
  try {
    HttpChatBackend backend(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
}

TEST(EndpointConfig, BaseUrlParsing) {
  auto u = detail::parse_base_url("http://localhost:8000/v1");
  EXPECT_EQ(u.scheme_host_port, "http://localhost:8000");
  EXPECT_EQ(u.path_prefix, "/v1");
  EXPECT_EQ(detail::parse_base_url("http://h:1").path_prefix, "");
  EXPECT_THROW(detail::parse_base_url("localhost:8000"), Error);
}

}  // namespace
}  // namespace persuade::agents

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

#include <atomic>
#include <random>

#include "test_support.hpp"

namespace persuade::envs {
namespace {

using agents::LlmReceiver;
using agents::LlmSender;
using agents::Mode;
using agents::ScriptedBackend;
using agents::StubBackend;

std::string receiver_text(int score, const std::string& opinion = "O", const std::string& q = "Q?") {
  return "<score>" + std::to_string(score) + "</score><opinion>" + opinion + "</opinion><thinking>T</thinking>" +
         (q.empty() ? "" : "<question>" + q + "</question>");
}

ClaimRecord sample_claim() { return {"c-1", "cmv", "Public transit should be free."}; }

// Valid transcript with the given baseline and per-round scores.
Transcript make_transcript(const std::string& id, int baseline, std::vector<int> scores,
                           Mode mode = Mode::kStatic) {
  Transcript t;
  t.claim = {id, "cmv", "Claim " + id + "."};
  t.config = EpisodeConfig::for_mode(mode, mode == Mode::kStatic ? std::optional<int>() : std::optional<int>(static_cast<int>(scores.size())));
  t.config.sender_label = "s";
  t.config.receiver_label = "r";
  t.baseline = agents::parse_receiver_output(receiver_text(baseline, "start"));
  for (std::size_t i = 0; i < scores.size(); ++i) {
    Turn turn;
    turn.sender = agents::parse_sender_output("<opinion>o</opinion><thinking>t</thinking><argument>arg " +
                                              std::to_string(i + 1) + "</argument>");
    turn.receiver = agents::parse_receiver_output(receiver_text(scores[i]));
    t.turns.push_back(turn);
  }
  t.valid = true;
  return t;
}

// ---- claims ----------------------------------------------------------------

TEST(Claims, SampleCorpusLoads) {
  auto claims = load_claims(testing::source_path("data/claims/sample_claims.jsonl"));
  ASSERT_EQ(claims.size(), 4u);
  std::set<std::string> datasets;
  for (const auto& c : claims) datasets.insert(c.dataset);
  EXPECT_EQ(datasets, (std::set<std::string>{"anthropic", "cmv", "ddo", "perspectrum"}));
  auto cmv = std::find_if(claims.begin(), claims.end(), [](const auto& c) { return c.id == "sample-cmv-1"; });
  ASSERT_NE(cmv, claims.end());
  EXPECT_EQ(cmv->dataset, "cmv");
  EXPECT_NE(cmv->claim.find("revenue constrained"), std::string::npos);
}

TEST(Claims, ErrorsCarryLineNumbers) {
  const std::string text =
      "{\"id\": \"a\", \"dataset\": \"cmv\", \"claim\": \"x\"}\n\n{\"id\": \"b\", \"dataset\": \"cmv\"}\n";
  try {
    parse_claims(text, "claims.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("claims.jsonl:3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("claim"), std::string::npos);
  }
  EXPECT_THROW(parse_claims("{\"id\": \"a\", \"dataset\": \"reddit\", \"claim\": \"x\"}", "f"), Error);
  EXPECT_THROW(parse_claims("not json", "f"), Error);
  try {
    parse_claims("{\"id\":\"a\",\"dataset\":\"cmv\",\"claim\":\"x\"}\n{\"id\":\"a\",\"dataset\":\"ddo\",\"claim\":\"y\"}",
                 "f");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
  }
}

TEST(Summarize, CannedSummaryAndEmptyPost) {
  auto b = ScriptedBackend::from_texts({"  Cats are better than dogs.\n"});
  EXPECT_EQ(summarize_claim(b, "long post"), "Cats are better than dogs.");
  EXPECT_NE(b.requests()[0].messages[0].content.find("long post"), std::string::npos);
  EXPECT_THROW(summarize_claim(b, "   "), Error);
}

TEST(Summarize, CmvPostYieldsOneSentenceClaim) {
  auto posts = load_posts(testing::source_path("data/claims/sample_posts.jsonl"));
  ASSERT_EQ(posts.size(), 1u);
  StubBackend stub(0);
  std::string claim = summarize_claim(stub, posts[0].claim);
  EXPECT_NE(claim.find("revenue"), std::string::npos) << claim;
  EXPECT_NE(claim.find("inflation"), std::string::npos) << claim;
  EXPECT_EQ(claim.back(), '.');
  EXPECT_EQ(std::count(claim.begin(), claim.end(), '.'), 1);
}

// ---- scores and rewards ----------------------------------------------------

TEST(ScoreOf, LikertMapping) {
  EXPECT_EQ(score_of(1), 1);
  EXPECT_EQ(score_of(7), 7);
  EXPECT_EQ(score_of(4), 4);
  EXPECT_THROW(score_of(0), Error);
  EXPECT_THROW(score_of(8), Error);
}

TEST(ComputeReward, Examples) {
  EXPECT_EQ(compute_reward(make_transcript("a", 3, {5})), 2);
  EXPECT_EQ(compute_reward(make_transcript("a", 4, {4})), 0);
  EXPECT_EQ(compute_reward(make_transcript("a", 6, {4})), -2);
  auto bad = make_transcript("a", 3, {5});
  bad.valid = false;
  try {
    compute_reward(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTranscript);
  }
}

TEST(EnvsProperty, RewardBounds) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> s(1, 7), rounds(1, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    int b = s(rng);
    std::vector<int> scores(static_cast<std::size_t>(rounds(rng)));
    for (auto& x : scores) x = s(rng);
    auto t = make_transcript("p" + std::to_string(trial), b, scores, Mode::kDynamic);
    int r = compute_reward(t);
    EXPECT_GE(r, -6);
    EXPECT_LE(r, 6);
    EXPECT_EQ(r == 0, scores.back() == b);
    EXPECT_EQ(make_rollout(t).reward, static_cast<double>(r));
  }
}

// ---- episodes --------------------------------------------------------------

TEST(RunEpisode, StubSenderScriptedReceiverThreeThenFive) {
  auto sender_backend = std::make_shared<StubBackend>(0, "stub-sender");
  auto receiver_backend =
      ScriptedBackend::shared({receiver_text(3), receiver_text(5)});
  LlmSender sender(sender_backend, Mode::kStatic);
  LlmReceiver receiver(receiver_backend);
  auto t = run_episode(sample_claim(), EpisodeConfig::for_mode(Mode::kStatic), sender, receiver);
  ASSERT_TRUE(t.valid) << t.error;
  EXPECT_EQ(t.baseline_score(), 3);
  EXPECT_EQ(t.final_score(), 5);
  EXPECT_EQ(t.turns.size(), 1u);
  EXPECT_EQ(compute_reward(t), 2);
  // Baseline is elicited with an empty transcript; the reply sees the argument.
  auto reqs = receiver_backend->requests();
  EXPECT_NE(reqs[0].messages.back().content.find("persuasion: \n"), std::string::npos);
  EXPECT_NE(reqs[1].messages.back().content.find(sender_entry(t.turns[0].sender)), std::string::npos);
}

TEST(RunEpisode, DynamicStubRunHasThreeTurns) {
  auto stub = std::make_shared<StubBackend>(4);
  LlmSender sender(stub, Mode::kDynamic);
  LlmReceiver receiver(stub);
  auto cfg = EpisodeConfig::for_mode(Mode::kDynamic, 3);
  auto t = run_episode(sample_claim(), cfg, sender, receiver);
  ASSERT_TRUE(t.valid) << t.error;
  ASSERT_EQ(t.turns.size(), 3u);
  EXPECT_EQ(t.final_score(), t.turns.back().receiver.score);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NE(t.turns[i].sender.argument.find("Round " + std::to_string(i + 1)), std::string::npos);
  }
  EXPECT_EQ(t.call_ms.size(), 7u);
}

TEST(RunEpisode, StaticModeRejectsMultipleRounds) {
  auto c = EpisodeConfig::for_mode(Mode::kStatic);
  EXPECT_EQ(c.rounds, 1);
  c.rounds = 3;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(EpisodeConfig::for_mode(Mode::kDynamic).rounds, kDefaultDynamicRounds);
}

TEST(RunEpisode, MalformedOutputMarksEpisodeInvalid) {
  auto stub = std::make_shared<StubBackend>(0);
  auto receiver_backend =
      ScriptedBackend::shared({receiver_text(4), "garbage", "garbage"});
  LlmSender sender(stub, Mode::kStatic);
  LlmReceiver receiver(receiver_backend);
  auto t = run_episode(sample_claim(), EpisodeConfig::for_mode(Mode::kStatic), sender, receiver);
  EXPECT_FALSE(t.valid);
  EXPECT_NE(t.error.find("AgentFailure"), std::string::npos) << t.error;
  ASSERT_EQ(t.turns.size(), 1u);  // the argument is kept
  EXPECT_FALSE(t.turns[0].sender.argument.empty());
  EXPECT_EQ(t.turns[0].receiver.score, 0);
}

TEST(RunEpisode, DeterministicWithStubs) {
  auto run = [] {
    auto stub = std::make_shared<StubBackend>(11);
    LlmSender sender(stub, Mode::kDynamic);
    LlmReceiver receiver(stub);
    auto cfg = EpisodeConfig::for_mode(Mode::kDynamic, 3);
    cfg.record_timing = false;
    return transcript_to_json(run_episode(sample_claim(), cfg, sender, receiver)).dump();
  };
  EXPECT_EQ(run(), run());
}

class WorkedTranscriptReplay : public ::testing::TestWithParam<std::pair<std::string, int>> {};

TEST_P(WorkedTranscriptReplay, ParsesToDisplayedTranscript) {
  auto [file, final_score] = GetParam();
  json fx = parse_json(read_file(testing::source_path(std::string("data/fixtures/") + file)), file);
  std::vector<std::string> receiver_texts = {fx["baseline_receiver_reply"].get<std::string>()};
  for (const auto& r : fx["receiver_replies"]) receiver_texts.push_back(r.get<std::string>());
  std::vector<std::string> sender_texts;
  for (const auto& s : fx["sender_replies"]) sender_texts.push_back(s.get<std::string>());

  Mode mode = sender_texts.size() == 1 ? Mode::kStatic : Mode::kDynamic;
  auto sb = ScriptedBackend::shared(sender_texts);
  auto rb = ScriptedBackend::shared(receiver_texts);
  LlmSender sender(sb, mode);
  LlmReceiver receiver(rb);
  ClaimRecord claim{fx["id"], fx["dataset"], fx["claim"]};
  auto cfg = EpisodeConfig::for_mode(mode, mode == Mode::kStatic ? std::nullopt
                                                                  : std::optional<int>(static_cast<int>(sender_texts.size())));
  auto t = run_episode(claim, cfg, sender, receiver);
  ASSERT_TRUE(t.valid) << t.error;
  ASSERT_EQ(t.turns.size(), sender_texts.size());
  EXPECT_EQ(t.final_score(), final_score);
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    EXPECT_EQ(t.turns[i].sender.argument, fx["displayed_sender_arguments"][i].get<std::string>());
    EXPECT_EQ(t.turns[i].receiver.score, final_score);
  }
  const auto& blocks = fx["displayed_receiver_blocks"];
  ASSERT_EQ(blocks.size(), t.turns.size() + 1);
  EXPECT_EQ(receiver_entry(*t.baseline), "Receiver: " + blocks[0].get<std::string>());
  // The displayed dialogue is abridged relative to the raw replies (wording
  // and trailing questions differ), so later blocks are not compared.
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    auto raw = agents::parse_receiver_output(fx["receiver_replies"][i].get<std::string>());
    EXPECT_EQ(t.turns[i].receiver, raw);
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, WorkedTranscriptReplay,
                         ::testing::Values(std::make_pair(std::string("worked_static.json"), 4),
                                           std::make_pair(std::string("worked_dynamic.json"), 6)),
                         [](const auto& info) {
                           std::string name = info.param.first;
                           return name.substr(7, name.size() - 12);  // worked_<mode>.json
                         });

TEST(RunEpisodes, KeepsOrderAndHonoursCancel) {
  auto stub = std::make_shared<StubBackend>(1);
  LlmSender sender(stub, Mode::kStatic);
  LlmReceiver receiver(stub);
  std::vector<ClaimRecord> claims;
  for (int i = 0; i < 9; ++i) claims.push_back({"id-" + std::to_string(i), "ddo", "Claim number " + std::to_string(i) + "."});
  auto cfg = EpisodeConfig::for_mode(Mode::kStatic);
  cfg.record_timing = false;
  auto parallel = run_episodes(claims, cfg, sender, receiver, 4);
  auto serial = run_episodes(claims, cfg, sender, receiver, 1);
  ASSERT_EQ(parallel.size(), claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) {
    EXPECT_EQ(parallel[i].claim.id, claims[i].id);
    EXPECT_EQ(transcript_to_json(parallel[i]), transcript_to_json(serial[i]));
  }
  std::atomic<bool> cancel{true};
  EXPECT_TRUE(run_episodes(claims, cfg, sender, receiver, 2, &cancel).empty());
}

// ---- serialization ---------------------------------------------------------

TEST(TranscriptIo, JsonRoundTripAndDirectory) {
  std::vector<Transcript> ts = {make_transcript("a/1", 3, {5}), make_transcript("b", 2, {3, 4, 6}, Mode::kDynamic)};
  auto bad = make_transcript("c", 4, {});
  bad.valid = false;
  bad.error = "boom";
  ts.push_back(bad);
  for (const auto& t : ts) {
    EXPECT_EQ(transcript_to_json(transcript_from_json(transcript_to_json(t), "t")), transcript_to_json(t));
  }
  auto dir = testing::scratch_dir("transcripts");
  write_transcripts(dir, ts);
  EXPECT_TRUE(std::filesystem::exists(dir / "index.jsonl"));
  auto back = read_transcripts(dir);
  ASSERT_EQ(back.size(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(transcript_to_json(back[i]), transcript_to_json(ts[i]));
  // Without an index the directory is read in file-name order.
  std::filesystem::remove(dir / "index.jsonl");
  EXPECT_EQ(read_transcripts(dir).size(), ts.size());
}

TEST(TranscriptIo, ShapeValidation) {
  json doc = transcript_to_json(make_transcript("b", 2, {3, 4, 6}, Mode::kDynamic));
  doc["turns"].erase(doc["turns"].size() - 1);
  EXPECT_THROW(transcript_from_json(doc, "t"), Error);
  doc = transcript_to_json(make_transcript("a", 3, {5}));
  doc["schema_version"] = 99;
  EXPECT_THROW(transcript_from_json(doc, "t"), Error);
}

// ---- rollouts --------------------------------------------------------------

TEST(Export, SkipsInvalidAndRoundTrips) {
  std::vector<Transcript> ts;
  for (int i = 0; i < 4; ++i) ts.push_back(make_transcript("v" + std::to_string(i), 2 + i, {3 + i % 3}));
  auto bad = make_transcript("x", 3, {5});
  bad.valid = false;
  ts.push_back(bad);

  auto dir = testing::scratch_dir("export");
  auto summary = export_rollouts(ts, dir / "rollouts.jsonl");
  EXPECT_EQ(summary.written, 4u);
  EXPECT_EQ(summary.skipped, 1u);
  auto back = read_rollouts(dir / "rollouts.jsonl");
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back[i], make_rollout(ts[i]));
    EXPECT_EQ(back[i].context.prior_summary, "start");
    EXPECT_EQ(back[i].message, "arg 1");
  }

  auto empty = export_rollouts({}, dir / "empty.jsonl");
  EXPECT_EQ(empty.written, 0u);
  EXPECT_TRUE(read_file(dir / "empty.jsonl").empty());
}

TEST(Export, DynamicMessageJoinsArguments) {
  auto r = make_rollout(make_transcript("d", 2, {3, 4, 6}, Mode::kDynamic));
  EXPECT_EQ(r.message, "arg 1\n\narg 2\n\narg 3");
  EXPECT_EQ(r.action, 6);
  EXPECT_EQ(r.reward, 4.0);
  EXPECT_EQ(r.context.mode, "dynamic");
}

}  // namespace
}  // namespace persuade::envs

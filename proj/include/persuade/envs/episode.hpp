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

// Episode protocol for the opinion-change benchmark.
//
// Round 0 asks the receiver for its stance with an empty transcript; that
// score is the baseline. Each later round the sender argues given the
// running transcript and the receiver answers with an updated score.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "persuade/agents/agents.hpp"
#include "persuade/agents/tags.hpp"
#include "persuade/envs/claims.hpp"
#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

namespace persuade::envs {

using agents::Mode;

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 7;
inline constexpr int kDefaultDynamicRounds = 3;

// g(a_i) = i on the 7-point Likert scale.
inline int score_of(int action_index) {
  require(action_index >= kMinScore && action_index <= kMaxScore, ErrorCode::kOutOfRange,
          "action index " + std::to_string(action_index) + " outside 1..7");
  return action_index;
}

struct EpisodeConfig {
  Mode mode = Mode::kStatic;
  int rounds = 1;
  int word_limit = agents::kDefaultWordLimit;
  std::string sender_label;
  std::string receiver_label;
  std::uint64_t seed = 0;
  // Wall-clock timings vary run to run; off for reproducible stub runs.
  bool record_timing = true;

  // Static episodes always have one round; dynamic ones default to three.
  static EpisodeConfig for_mode(Mode mode, std::optional<int> rounds = std::nullopt) {
    EpisodeConfig c;
    c.mode = mode;
    c.rounds = mode == Mode::kStatic ? 1 : rounds.value_or(kDefaultDynamicRounds);
    return c;
  }

  void validate() const {
    require(rounds >= 1, ErrorCode::kInvalidConfig, "rounds must be >= 1");
    require(mode != Mode::kStatic || rounds == 1, ErrorCode::kInvalidConfig,
            "static episodes have exactly one round");
    require(word_limit > 0, ErrorCode::kInvalidConfig, "word_limit must be > 0");
  }
};

struct Turn {
  agents::ParsedSenderTurn sender;
  agents::ParsedReceiverTurn receiver;
};

struct Transcript {
  ClaimRecord claim;
  EpisodeConfig config;
  std::optional<agents::ParsedReceiverTurn> baseline;
  std::vector<Turn> turns;
  bool valid = false;
  std::string error;
  std::vector<double> call_ms;  // latency of each agent call, when recorded

  int baseline_score() const { return baseline ? baseline->score : 0; }
  // Last elicited score; a failed episode may end with an unanswered turn.
  int final_score() const {
    for (auto it = turns.rbegin(); it != turns.rend(); ++it) {
      if (it->receiver.score != 0) return it->receiver.score;
    }
    return baseline_score();
  }
};

// Dialogue as shown to both agents: the receiver's opinion and question,
// then each sender argument and receiver reply, blank-line separated.
inline std::string receiver_entry(const agents::ParsedReceiverTurn& r) {
  std::string out = "Receiver: " + r.opinion;
  if (!r.question.empty()) out += "\n" + r.question;
  return out;
}

inline std::string sender_entry(const agents::ParsedSenderTurn& s) { return "Sender: " + s.argument; }

inline std::string render_dialogue(const Transcript& t, std::size_t turns,
                                   bool include_last_receiver) {
  std::string out;
  auto append = [&](const std::string& entry) {
    if (!out.empty()) out += "\n\n";
    out += entry;
  };
  if (t.baseline) append(receiver_entry(*t.baseline));
  for (std::size_t i = 0; i < turns && i < t.turns.size(); ++i) {
    append(sender_entry(t.turns[i].sender));
    if (i + 1 < turns || include_last_receiver) append(receiver_entry(t.turns[i].receiver));
  }
  return out;
}

inline std::string render_dialogue(const Transcript& t) {
  return render_dialogue(t, t.turns.size(), true);
}

inline Transcript run_episode(const ClaimRecord& claim, const EpisodeConfig& config,
                              agents::SenderAgent& sender, agents::ReceiverAgent& receiver) {
  config.validate();
  Transcript t;
  t.claim = claim;
  t.config = config;
  if (t.config.sender_label.empty()) t.config.sender_label = sender.label();
  if (t.config.receiver_label.empty()) t.config.receiver_label = receiver.label();

  const auto timed = [&](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    auto out = fn();
    if (config.record_timing) {
      t.call_ms.push_back(
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    return out;
  };

  try {
    t.baseline = timed([&] { return receiver.respond(claim.claim, ""); });
    std::string dialogue = receiver_entry(*t.baseline);
    for (int r = 0; r < config.rounds; ++r) {
      Turn turn;
      turn.sender = timed([&] { return sender.argue(claim.claim, dialogue); });
      std::string with_argument = dialogue + "\n\n" + sender_entry(turn.sender);
      // Pushed before the receiver answers so a failure keeps the argument.
      t.turns.push_back(turn);
      t.turns.back().receiver = timed([&] { return receiver.respond(claim.claim, with_argument); });
      dialogue = with_argument + "\n\n" + receiver_entry(t.turns.back().receiver);
    }
    t.valid = true;
  } catch (const std::exception& e) {
    t.valid = false;
    t.error = e.what();
  }
  return t;
}

// Runs episodes across up to `concurrency` threads. Results keep input
// order. When `cancel` becomes true, episodes not yet started are skipped
// and omitted from the result.
inline std::vector<Transcript> run_episodes(const std::vector<ClaimRecord>& claims,
                                            const EpisodeConfig& config,
                                            agents::SenderAgent& sender,
                                            agents::ReceiverAgent& receiver, int concurrency = 1,
                                            const std::atomic<bool>* cancel = nullptr) {
  config.validate();
  require(concurrency >= 1, ErrorCode::kInvalidConfig, "concurrency must be >= 1");
  std::vector<std::optional<Transcript>> slots(claims.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < claims.size(); i = next++) {
      if (cancel && cancel->load()) return;
      slots[i] = run_episode(claims[i], config, sender, receiver);
    }
  };
  std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(concurrency), claims.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<Transcript> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

// g(final) - g(baseline).
inline int compute_reward(const Transcript& t) {
  require(t.valid && t.baseline.has_value() && !t.turns.empty(), ErrorCode::kInvalidTranscript,
          "reward needs a valid transcript (claim " + t.claim.id + ")");
  return score_of(t.final_score()) - score_of(t.baseline_score());
}

// ---- serialization -------------------------------------------------------

inline json sender_turn_to_json(const agents::ParsedSenderTurn& s) {
  return {{"opinion", s.opinion}, {"thinking", s.thinking}, {"argument", s.argument}, {"raw", s.raw}};
}

inline json receiver_turn_to_json(const agents::ParsedReceiverTurn& r) {
  return {{"score", r.score},       {"opinion", r.opinion}, {"thinking", r.thinking},
          {"question", r.question}, {"raw", r.raw}};
}

inline json episode_config_to_json(const EpisodeConfig& c) {
  return {{"mode", agents::mode_name(c.mode)}, {"rounds", c.rounds},
          {"word_limit", c.word_limit},         {"sender", c.sender_label},
          {"receiver", c.receiver_label},       {"seed", c.seed}};
}

inline json transcript_to_json(const Transcript& t) {
  json turns = json::array();
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    turns.push_back({{"round", i + 1},
                     {"sender", sender_turn_to_json(t.turns[i].sender)},
                     {"receiver", receiver_turn_to_json(t.turns[i].receiver)}});
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"claim", claim_to_json(t.claim)},
              {"config", episode_config_to_json(t.config)},
              {"baseline", t.baseline ? receiver_turn_to_json(*t.baseline) : json(nullptr)},
              {"baseline_score", t.baseline_score()},
              {"final_score", t.final_score()},
              {"turns", std::move(turns)},
              {"valid", t.valid}};
  if (!t.error.empty()) doc["error"] = t.error;
  if (t.config.record_timing && !t.call_ms.empty()) doc["timing_ms"] = t.call_ms;
  return doc;
}

namespace detail {

inline agents::ParsedSenderTurn sender_turn_from_json(const json& j) {
  return {j.at("opinion").get<std::string>(), j.at("thinking").get<std::string>(),
          j.at("argument").get<std::string>(), j.value("raw", std::string())};
}

inline agents::ParsedReceiverTurn receiver_turn_from_json(const json& j) {
  agents::ParsedReceiverTurn r;
  r.score = j.at("score").get<int>();
  r.opinion = j.at("opinion").get<std::string>();
  r.thinking = j.at("thinking").get<std::string>();
  r.question = j.value("question", std::string());
  r.raw = j.value("raw", std::string());
  return r;
}

}  // namespace detail

inline Transcript transcript_from_json(const json& doc, const std::string& source) {
  Transcript t;
  try {
    int version = doc.at("schema_version").get<int>();
    require(version == kSchemaVersion, ErrorCode::kInvalidTranscript,
            source + ": unsupported schema_version " + std::to_string(version));
    t.claim = detail::claim_from_json(doc.at("claim"), source);
    const json& c = doc.at("config");
    t.config.mode = agents::parse_mode(c.at("mode").get<std::string>());
    t.config.rounds = c.at("rounds").get<int>();
    t.config.word_limit = c.value("word_limit", agents::kDefaultWordLimit);
    t.config.sender_label = c.value("sender", std::string());
    t.config.receiver_label = c.value("receiver", std::string());
    t.config.seed = c.value("seed", std::uint64_t{0});
    t.config.record_timing = doc.contains("timing_ms");
    if (!doc.at("baseline").is_null()) t.baseline = detail::receiver_turn_from_json(doc.at("baseline"));
    for (const auto& turn : doc.at("turns")) {
      t.turns.push_back({detail::sender_turn_from_json(turn.at("sender")),
                         detail::receiver_turn_from_json(turn.at("receiver"))});
    }
    t.valid = doc.at("valid").get<bool>();
    t.error = doc.value("error", std::string());
    if (doc.contains("timing_ms")) t.call_ms = doc["timing_ms"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidTranscript, source + ": " + e.what());
  }
  if (t.valid) {
    require(t.baseline.has_value(), ErrorCode::kInvalidTranscript, source + ": valid but no baseline");
    require(static_cast<int>(t.turns.size()) == t.config.rounds, ErrorCode::kInvalidTranscript,
            source + ": turn count does not match rounds");
    auto in_range = [](int s) { return s >= kMinScore && s <= kMaxScore; };
    bool ok = in_range(t.baseline->score);
    for (const auto& turn : t.turns) ok = ok && in_range(turn.receiver.score);
    require(ok, ErrorCode::kInvalidTranscript, source + ": score outside 1..7");
  }
  return t;
}

// ---- transcript directories ---------------------------------------------

inline std::string transcript_file_name(std::size_t index, const Transcript& t) {
  std::string safe;
  for (char ch : t.claim.id) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
              ch == '-' || ch == '_' || ch == '.';
    safe += ok ? ch : '_';
  }
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%05zu_", index);
  return prefix + safe + ".json";
}

inline json index_entry(const Transcript& t, const std::string& file) {
  json e = {{"schema_version", kSchemaVersion},
            {"file", file},
            {"id", t.claim.id},
            {"dataset", t.claim.dataset},
            {"mode", agents::mode_name(t.config.mode)},
            {"sender", t.config.sender_label},
            {"valid", t.valid},
            {"baseline_score", t.baseline_score()},
            {"final_score", t.final_score()}};
  e["reward"] = t.valid ? json(compute_reward(t)) : json(nullptr);
  return e;
}

// Writes one JSON document per transcript plus index.jsonl into `dir`.
inline void write_transcripts(const std::filesystem::path& dir, const std::vector<Transcript>& ts) {
  std::filesystem::create_directories(dir);
  std::vector<json> index;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string name = transcript_file_name(i, ts[i]);
    write_file_atomic(dir / name, transcript_to_json(ts[i]).dump(2) + "\n");
    index.push_back(index_entry(ts[i], name));
  }
  write_file_atomic(dir / "index.jsonl", to_jsonl(index));
}

// Reads every transcript listed in index.jsonl, or every *.json file in
// name order when there is no index.
inline std::vector<Transcript> read_transcripts(const std::filesystem::path& dir) {
  require(std::filesystem::is_directory(dir), ErrorCode::kIoError,
          "transcript directory " + dir.string() + " does not exist");
  std::vector<std::filesystem::path> files;
  auto index_path = dir / "index.jsonl";
  if (std::filesystem::exists(index_path)) {
    auto lines = split_lines(read_file(index_path));
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (agents::trim(lines[i]).empty()) continue;
      json e = parse_json(lines[i], index_path.string() + ":" + std::to_string(i + 1));
      files.push_back(dir / e.at("file").get<std::string>());
    }
  } else {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  }
  std::vector<Transcript> out;
  for (const auto& f : files) {
    out.push_back(transcript_from_json(parse_json(read_file(f), f.string()), f.string()));
  }
  return out;
}

}  // namespace persuade::envs

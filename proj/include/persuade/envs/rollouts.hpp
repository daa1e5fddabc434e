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

// Reward-labelled rollouts for policy-gradient trainers, one JSON object per
// line: {schema_version, context, message, action, reward}.

#include <filesystem>
#include <string>
#include <vector>

#include "persuade/envs/episode.hpp"
#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

namespace persuade::envs {

inline constexpr const char* kActionSpaceDescription =
    "7-point Likert scale: 1 = completely oppose ... 7 = completely support";

struct RolloutContext {
  std::string claim_id;
  std::string dataset;
  std::string claim;
  std::string mode;
  std::string prior_summary;  // receiver's round-0 opinion
  int baseline_score = 0;
  std::string action_space = kActionSpaceDescription;

  friend bool operator==(const RolloutContext&, const RolloutContext&) = default;
};

struct RolloutRecord {
  RolloutContext context;
  std::string message;  // sender arguments, blank-line joined across rounds
  int action = 0;       // final receiver score
  double reward = 0.0;

  friend bool operator==(const RolloutRecord&, const RolloutRecord&) = default;
};

inline RolloutRecord make_rollout(const Transcript& t) {
  RolloutRecord r;
  r.context.claim_id = t.claim.id;
  r.context.dataset = t.claim.dataset;
  r.context.claim = t.claim.claim;
  r.context.mode = std::string(agents::mode_name(t.config.mode));
  r.context.prior_summary = t.baseline ? t.baseline->opinion : std::string();
  r.context.baseline_score = t.baseline_score();
  for (const auto& turn : t.turns) {
    if (!r.message.empty()) r.message += "\n\n";
    r.message += turn.sender.argument;
  }
  r.action = t.final_score();
  r.reward = compute_reward(t);
  return r;
}

inline json rollout_to_json(const RolloutRecord& r) {
  return {{"schema_version", kSchemaVersion},
          {"context",
           {{"claim_id", r.context.claim_id},
            {"dataset", r.context.dataset},
            {"claim", r.context.claim},
            {"mode", r.context.mode},
            {"prior_summary", r.context.prior_summary},
            {"baseline_score", r.context.baseline_score},
            {"action_space", r.context.action_space}}},
          {"message", r.message},
          {"action", r.action},
          {"reward", r.reward}};
}

inline RolloutRecord rollout_from_json(const json& j, const std::string& where) {
  try {
    RolloutRecord r;
    const json& c = j.at("context");
    r.context.claim_id = c.at("claim_id").get<std::string>();
    r.context.dataset = c.at("dataset").get<std::string>();
    r.context.claim = c.at("claim").get<std::string>();
    r.context.mode = c.at("mode").get<std::string>();
    r.context.prior_summary = c.at("prior_summary").get<std::string>();
    r.context.baseline_score = c.at("baseline_score").get<int>();
    r.context.action_space = c.at("action_space").get<std::string>();
    r.message = j.at("message").get<std::string>();
    r.action = j.at("action").get<int>();
    r.reward = j.at("reward").get<double>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, where + ": " + e.what());
  }
}

struct ExportSummary {
  std::size_t written = 0;
  std::size_t skipped = 0;
};

inline std::string rollouts_jsonl(const std::vector<Transcript>& ts, ExportSummary* summary = nullptr) {
  ExportSummary s;
  std::string out;
  for (const auto& t : ts) {
    if (!t.valid) {
      ++s.skipped;
      continue;
    }
    out += rollout_to_json(make_rollout(t)).dump();
    out += '\n';
    ++s.written;
  }
  if (summary) *summary = s;
  return out;
}

inline ExportSummary export_rollouts(const std::vector<Transcript>& ts,
                                     const std::filesystem::path& path) {
  ExportSummary s;
  std::string body = rollouts_jsonl(ts, &s);
  write_file_atomic(path, body);
  return s;
}

inline std::vector<RolloutRecord> read_rollouts(const std::filesystem::path& path) {
  std::vector<RolloutRecord> out;
  auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (agents::trim(lines[i]).empty()) continue;
    std::string where = path.string() + ":" + std::to_string(i + 1);
    out.push_back(rollout_from_json(parse_json(lines[i], where), where));
  }
  return out;
}

}  // namespace persuade::envs

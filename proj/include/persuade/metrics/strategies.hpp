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

// Top-3 persuasion strategies of a transcript's sender, classified by a
// chat model over the eight-label taxonomy.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/agents/agents.hpp"
#include "persuade/agents/prompts.hpp"
#include "persuade/agents/tags.hpp"
#include "persuade/envs/episode.hpp"
#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

namespace persuade::metrics {

inline constexpr std::array<std::string_view, 8> kStrategies = {
    "commitment", "emotion", "politeness", "reciprocity", "scarcity", "credibility", "evidence", "impact"};

// Lower-cases and trims a label; "Evidence: ..." reduces to "evidence".
inline std::optional<std::string> normalize_strategy(std::string_view raw) {
  std::string_view s = agents::trim(raw);
  if (auto colon = s.find(':'); colon != std::string_view::npos) s = agents::trim(s.substr(0, colon));
  std::string out;
  for (unsigned char ch : s) out += static_cast<char>(std::tolower(ch));
  while (!out.empty() && (out.back() == '.' || out.back() == ',')) out.pop_back();
  if (std::find(kStrategies.begin(), kStrategies.end(), out) == kStrategies.end()) return std::nullopt;
  return out;
}

// Exactly three distinct taxonomy labels, or nullopt.
inline std::optional<std::vector<std::string>> parse_strategies(std::string_view text) {
  std::vector<std::string> labels;
  for (const auto& s : agents::find_all_sections(text, "strategy")) {
    auto norm = normalize_strategy(s);
    if (!norm) return std::nullopt;
    if (std::find(labels.begin(), labels.end(), *norm) != labels.end()) return std::nullopt;
    labels.push_back(*norm);
  }
  if (labels.size() != 3) return std::nullopt;
  return labels;
}

// PRIOR is the receiver's round-0 turn; INFORMATION is every sender argument.
inline std::vector<agents::ChatMessage> classification_prompt(const envs::Transcript& t) {
  require(!t.turns.empty(), ErrorCode::kInvalidArgument,
          "transcript " + t.claim.id + " has no sender turn");
  std::string prior;
  if (t.baseline) {
    prior = t.baseline->opinion;
    if (!t.baseline->question.empty()) prior += "\n" + t.baseline->question;
  }
  std::string information;
  for (const auto& turn : t.turns) {
    if (!information.empty()) information += "\n\n";
    information += turn.sender.argument;
  }
  return agents::render(agents::strategy_classification_template(),
                        {{"PRIOR", prior}, {"INFORMATION", information}, {"STRATEGY", "strategy"}});
}

inline std::vector<std::string> classify_strategies(agents::ChatBackend& backend,
                                                    const envs::Transcript& t) {
  auto messages = classification_prompt(t);
  std::string first = agents::llm_complete(backend, messages);
  if (auto labels = parse_strategies(first)) return *labels;
  if (!first.empty()) messages.emplace_back(agents::Role::kAssistant, first);
  messages.emplace_back(agents::Role::kUser, std::string(agents::text::kClassificationReminder));
  std::string second = agents::llm_complete(backend, std::move(messages));
  if (auto labels = parse_strategies(second)) return *labels;
  fail(ErrorCode::kUnparseableClassification,
       "no valid 3-strategy list for " + t.claim.id + " after re-ask");
}

struct ClassifiedTranscript {
  std::string claim_id;
  std::string dataset;
  std::string mode;
  std::vector<std::string> strategies;
};

struct StrategyTally {
  std::map<std::string, std::size_t> counts;
  std::vector<ClassifiedTranscript> transcripts;
  std::vector<std::string> failures;  // claim ids

  StrategyTally() {
    for (auto s : kStrategies) counts[std::string(s)] = 0;
  }
  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [_, c] : counts) n += c;
    return n;
  }
  void add(ClassifiedTranscript c) {
    for (const auto& s : c.strategies) ++counts.at(s);
    transcripts.push_back(std::move(c));
  }
};

inline StrategyTally tally_strategies(agents::ChatBackend& backend,
                                      const std::vector<envs::Transcript>& transcripts) {
  StrategyTally tally;
  for (const auto& t : transcripts) {
    if (!t.valid || t.turns.empty()) continue;
    try {
      tally.add({t.claim.id, t.claim.dataset, std::string(agents::mode_name(t.config.mode)),
                 classify_strategies(backend, t)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnparseableClassification) throw;
      tally.failures.push_back(t.claim.id);
    }
  }
  return tally;
}

inline json strategy_tally_to_json(const StrategyTally& t) {
  json per = json::array();
  for (const auto& c : t.transcripts) {
    per.push_back({{"id", c.claim_id}, {"dataset", c.dataset}, {"mode", c.mode}, {"strategies", c.strategies}});
  }
  return {{"counts", t.counts}, {"total", t.total()}, {"transcripts", per}, {"failures", t.failures}};
}

}  // namespace persuade::metrics

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

// Versioned prompt templates for the persuasion protocol and the analysis
// passes. Placeholders are upper-case tokens in angle brackets (<CLAIM>);
// lower-case angle-bracket text is literal tag syntax shown to the model.
//
// These strings are byte-stable: any edit must bump kPromptVersion and the
// golden files under tests/golden/.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/agents/chat.hpp"
#include "persuade/error.hpp"

namespace persuade::agents {

inline constexpr int kPromptVersion = 1;
inline constexpr int kDefaultWordLimit = 300;

namespace text {

inline constexpr std::string_view kSenderStaticSystem =
    R"PROMPT(You will act as a fully rational agent named Sender in a persuasion game. You know the true state of the world or have access to informative signals about it. Your goal is to persuade a rational agent Receiver's to take an action that maximizes your utility by carefully designing the flow of information. You do not have direct control over the Receiver’s choices and cannot offer transfers or alter the Receiver’s payoffs. Instead, your only instrument of influence is information: you can choose or design a signal that provides information about the state of the world, and then decide how to communicate that signal to the Receiver.

You will be shown a claim over a controversial issue. You will be assigned to argue in favor of this claim. Your utility is maximized when the Receiver believes in your claim in the end of the persuasion game. Here is the claim:
<CLAIM>

Structure your output as follows.
<opinion>opinion</opinion>
<thinking>thinking</thinking>
<argument>argument</argument>
Make sure to include tags: <opinion>, </opinion>, <thinking>, </thinking>, <argument>, and </argument>.)PROMPT";

inline constexpr std::string_view kSenderDynamicSystem =
    R"PROMPT(You will act as a fully rational agent named Sender in a persuasion game. You know the true state of the world or have access to informative signals about it evolving over time. You goal is to persuade a rational agent Receiver's to take an action that maximizes your utility by carefully designing the flow of information. At each time step, you should decide whether and what message to send to Receiver to send to the agent to maximize your long-run utility. The Receiver is myopic and only reacts to current beliefs. You do not have direct control over the Receiver’s choices and cannot offer transfers or alter the Receiver’s payoffs. Instead, your only instrument of influence is information: you can choose or design a signal that provides information about the state of the world, and then decide how to communicate that signal to the Receiver.
You will be shown a claim over a controversial issue. You will be assigned to argue in favor of this claim. Your utility is maximized when the Receiver believes in your claim in the end of the persuasion game. Here is the claim:
<CLAIM>
Structure your output as follows.
<opinion>opinion</opinion>
<thinking>thinking</thinking>
<argument>argument</argument>
Make sure to include tags: <opinion>, </opinion>, <thinking>, </thinking>, <argument>, and </argument>.)PROMPT";

inline constexpr std::string_view kSenderConfirmRequest =
    R"PROMPT(Here is the claim:
<CLAIM>
Please restate your position to confirm you understand.)PROMPT";

inline constexpr std::string_view kSenderConfirmation =
    R"PROMPT(I understand. I will argue the claim that <CLAIM>)PROMPT";

inline constexpr std::string_view kSenderTurnRequest =
    R"PROMPT(Here is the current transcript of the persuasion:
<TRANSCRIPT_MESSAGE>
Think about your current opinion about the controversial issue. Express your opinion in <opinion></opinion> tags. Think about your argument in <thinking></thinking> tags step by step. Finally, write your argument in <argument></argument> tags. Do not exceed <WORD_LIMIT> words.)PROMPT";

inline constexpr std::string_view kReceiverSystem =
    R"PROMPT(You will act as a fully rational agent named Receiver in a persuasion game. You are a Bayesian decision-maker who updates your beliefs about the state of the world using Bayes’ rule upon receiving a message from the Sender. You should choose the action that maximizes your expected utility. You understand the strategic nature of the Sender’s communication. The Sender has designed the message to influence your behavior, but she still uses the information objectively, as long as it is informative. You are not naive or easily manipulated, but instead makes optimal decisions based on updated beliefs.

The Sender is arguing for a claim over a controversial issue. You should express your own opinions toward the issue. Your utility is maximized when your opinion is correct based on the knowledge you have. Here is the claim:
<CLAIM>

Structure your output as follows:
<score>score</score>
<opinion>opinion</opinion>
<thinking>thinking</thinking>
<question>question</question>
Make sure to include tags: <score>, </score>, <opinion>, </opinion>, <thinking>, </thinking>, <question>, and </questions>.)PROMPT";

inline constexpr std::string_view kReceiverTurnRequest =
    R"PROMPT(Here is the current transcript of the persuasion: <TRANSCRIPT_MESSAGE>

Think about your current opinion about the controversial issue. Report your initial level of support for the claim on a 1 to 7 Likert scale (1: completely oppose, 7: completely support) in <score></score> tags. Express your opinion in <opinion></opinion> tags. Think about your argument in <thinking></thinking> tags step by step. Finally, write your questions in <question></question> tags. Do not exceed <WORD_LIMIT> words.)PROMPT";

inline constexpr std::string_view kClaimSummarization =
    R"PROMPT(Summarize the claim discussed in the post in one sentence. Only output the claim in an assertive tone.
<TRANSCRIPT>)PROMPT";

inline constexpr std::string_view kStrategyClassification =
    R"PROMPT(Given a textual transcript from a persuasion, list the 3 main strategies used by the Sender in the information to persuade the Receiver.

Potential strategies include:

- Commitment: The persuaders indicating their intentions to take acts or justify their earlier decisions to convince others that they have made the correct choice.

- Emotion: Making request full of emotional valence and arousal affect to influence others.

- Politeness: The usage of polite language in requests.

- Reciprocity: Responding to a positive action with another positive action. People are more likely to help if they have received help themselves.

- Scarcity: People emphasizing on the urgency, rare of their needs.

- Credibility: The uses of credentials impacts to establish credibility and earn others' trust.

- Evidence: Providing concrete facts or evidence for the narrative or request.

- Impact: Emphasizing the importance or impact of the request.

Receiver:
<prior><PRIOR></prior>

Sender:
<information><INFORMATION></information>

Structure your response as lists of strategies. Make sure to use <strategy> and </strategy> to list each strategy.
<strategies>
<strategy><STRATEGY></strategy>
</strategies>)PROMPT";

// Yes/no probe used to read the receiver model's prior confidence in a claim
// from the probability of the affirmative token.
inline constexpr std::string_view kPriorProbe =
    R"PROMPT(Here is a claim:
<CLAIM>
Do you agree with this claim? Answer with a single word: yes or no.)PROMPT";

inline constexpr std::string_view kFormatReminder =
    R"PROMPT(Your previous reply did not follow the required format. Reply again and make sure to include every required tag exactly once: <TAGS>.)PROMPT";

inline constexpr std::string_view kClassificationReminder =
    R"PROMPT(Your previous reply did not follow the required format. List exactly 3 different strategies from the list above, each inside its own <strategy></strategy> tags.)PROMPT";

}  // namespace text

struct MessageTemplate {
  Role role;
  std::string_view text;
};

struct PromptTemplate {
  std::string name;
  std::vector<MessageTemplate> blocks;
};

using Bindings = std::map<std::string, std::string, std::less<>>;

namespace detail {

inline bool is_placeholder_char(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }

// Finds "<NAME>" at `pos` where NAME is [A-Z_]+ starting with a letter.
inline std::size_t placeholder_length(std::string_view s, std::size_t pos) {
  if (s[pos] != '<' || pos + 2 >= s.size() || !(s[pos + 1] >= 'A' && s[pos + 1] <= 'Z')) return 0;
  std::size_t j = pos + 1;
  while (j < s.size() && is_placeholder_char(s[j])) ++j;
  if (j < s.size() && s[j] == '>') return j - pos + 1;
  return 0;
}

}  // namespace detail

// Single-pass substitution; values are inserted verbatim and never rescanned.
inline std::string substitute(std::string_view text, const Bindings& bindings) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = detail::placeholder_length(text, i);
    if (len == 0) {
      out += text[i++];
      continue;
    }
    std::string_view name = text.substr(i + 1, len - 2);
    auto it = bindings.find(name);
    require(it != bindings.end(), ErrorCode::kUnboundPlaceholder,
            "placeholder <" + std::string(name) + "> has no binding");
    out += it->second;
    i += len;
  }
  return out;
}

// Distinct placeholder names, in order of first appearance.
inline std::vector<std::string> placeholders(std::string_view text) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::size_t len = detail::placeholder_length(text, i)) {
      std::string name(text.substr(i + 1, len - 2));
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
      i += len - 1;
    }
  }
  return names;
}

inline std::vector<ChatMessage> render(const PromptTemplate& tmpl, const Bindings& bindings) {
  std::vector<ChatMessage> out;
  out.reserve(tmpl.blocks.size());
  for (const auto& block : tmpl.blocks) out.emplace_back(block.role, substitute(block.text, bindings));
  return out;
}

inline PromptTemplate sender_static_template() {
  return {"sender_static",
          {{Role::kSystem, text::kSenderStaticSystem},
           {Role::kUser, text::kSenderConfirmRequest},
           {Role::kAssistant, text::kSenderConfirmation},
           {Role::kUser, text::kSenderTurnRequest}}};
}

inline PromptTemplate sender_dynamic_template() {
  return {"sender_dynamic",
          {{Role::kSystem, text::kSenderDynamicSystem},
           {Role::kUser, text::kSenderConfirmRequest},
           {Role::kAssistant, text::kSenderConfirmation},
           {Role::kUser, text::kSenderTurnRequest}}};
}

// The receiver uses the same prompt in static and dynamic episodes.
inline PromptTemplate receiver_template() {
  return {"receiver", {{Role::kSystem, text::kReceiverSystem}, {Role::kUser, text::kReceiverTurnRequest}}};
}

inline PromptTemplate claim_summarization_template() {
  return {"claim_summarization", {{Role::kUser, text::kClaimSummarization}}};
}

inline PromptTemplate strategy_classification_template() {
  return {"strategy_classification", {{Role::kUser, text::kStrategyClassification}}};
}

inline PromptTemplate prior_probe_template() {
  return {"prior_probe", {{Role::kUser, text::kPriorProbe}}};
}

inline std::vector<ChatMessage> render_prompt(const PromptTemplate& tmpl, std::string_view claim,
                                              std::string_view transcript,
                                              int word_limit = kDefaultWordLimit) {
  require(word_limit > 0, ErrorCode::kInvalidArgument, "word limit must be positive");
  return render(tmpl, {{"CLAIM", std::string(claim)},
                       {"TRANSCRIPT_MESSAGE", std::string(transcript)},
                       {"WORD_LIMIT", std::to_string(word_limit)}});
}

inline std::string format_reminder(std::string_view tag_list) {
  return substitute(text::kFormatReminder, {{"TAGS", std::string(tag_list)}});
}

}  // namespace persuade::agents

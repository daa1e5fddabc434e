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

// Sender and Receiver roles on top of a ChatBackend, plus the exact
// (utility-maximizing) receiver used by synthetic environments.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "persuade/agents/chat.hpp"
#include "persuade/agents/prompts.hpp"
#include "persuade/agents/tags.hpp"
#include "persuade/core/belief_ops.hpp"
#include "persuade/core/types.hpp"

namespace persuade::agents {

enum class Mode { kStatic, kDynamic };

inline std::string_view mode_name(Mode m) { return m == Mode::kStatic ? "static" : "dynamic"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "static") return Mode::kStatic;
  if (s == "dynamic") return Mode::kDynamic;
  fail(ErrorCode::kInvalidConfig, "unknown mode '" + std::string(s) + "'");
}

// Sends one request and returns the assistant text.
inline std::string llm_complete(ChatBackend& backend, std::vector<ChatMessage> messages,
                                std::optional<double> temperature = std::nullopt) {
  ChatRequest req;
  req.messages = std::move(messages);
  req.temperature = temperature;
  return backend.complete(req).text;
}

namespace detail {

// Asks once; on a format error, appends the bad reply and a reminder and
// asks again. A second format error becomes AgentFailure.
template <typename Parse>
auto ask_with_reask(ChatBackend& backend, std::vector<ChatMessage> messages,
                    std::optional<double> temperature, std::string_view tag_list, Parse parse,
                    std::string_view role) {
  std::string first = llm_complete(backend, messages, temperature);
  try {
    return parse(first);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMissingTag && e.code() != ErrorCode::kScoreNotInteger &&
        e.code() != ErrorCode::kScoreOutOfRange) {
      throw;
    }
  }
  if (!first.empty()) messages.emplace_back(Role::kAssistant, first);
  messages.emplace_back(Role::kUser, format_reminder(tag_list));
  std::string second = llm_complete(backend, std::move(messages), temperature);
  try {
    return parse(second);
  } catch (const Error& e) {
    fail(ErrorCode::kAgentFailure,
         std::string(role) + " output malformed after re-ask: " + e.what());
  }
}

}  // namespace detail

class SenderAgent {
 public:
  virtual ~SenderAgent() = default;
  virtual ParsedSenderTurn argue(std::string_view claim, std::string_view transcript) = 0;
  virtual std::string label() const = 0;
};

class ReceiverAgent {
 public:
  virtual ~ReceiverAgent() = default;
  virtual ParsedReceiverTurn respond(std::string_view claim, std::string_view transcript) = 0;
  virtual std::string label() const = 0;
};

struct AgentOptions {
  int word_limit = kDefaultWordLimit;
  std::optional<double> temperature;
};

class LlmSender : public SenderAgent {
 public:
  LlmSender(std::shared_ptr<ChatBackend> backend, Mode mode, AgentOptions opts = {})
      : backend_(std::move(backend)), mode_(mode), opts_(opts) {
    require(backend_ != nullptr, ErrorCode::kInvalidArgument, "sender backend is null");
  }

  ParsedSenderTurn argue(std::string_view claim, std::string_view transcript) override {
    auto tmpl = mode_ == Mode::kStatic ? sender_static_template() : sender_dynamic_template();
    return detail::ask_with_reask(
        *backend_, render_prompt(tmpl, claim, transcript, opts_.word_limit), opts_.temperature,
        "<opinion>, <thinking>, <argument>",
        [](const std::string& t) { return parse_sender_output(t); }, "sender");
  }

  std::string label() const override { return backend_->name(); }

 private:
  std::shared_ptr<ChatBackend> backend_;
  Mode mode_;
  AgentOptions opts_;
};

class LlmReceiver : public ReceiverAgent {
 public:
  explicit LlmReceiver(std::shared_ptr<ChatBackend> backend, AgentOptions opts = {})
      : backend_(std::move(backend)), opts_(opts) {
    require(backend_ != nullptr, ErrorCode::kInvalidArgument, "receiver backend is null");
  }

  ParsedReceiverTurn respond(std::string_view claim, std::string_view transcript) override {
    return detail::ask_with_reask(
        *backend_, render_prompt(receiver_template(), claim, transcript, opts_.word_limit),
        opts_.temperature, "<score>, <opinion>, <thinking>, <question>",
        [](const std::string& t) { return parse_receiver_output(t); }, "receiver");
  }

  std::string label() const override { return backend_->name(); }

 private:
  std::shared_ptr<ChatBackend> backend_;
  AgentOptions opts_;
};

// Probability the model assigns to "yes" as its first token when asked
// whether it agrees with the claim. Token matching ignores surrounding
// whitespace and case.
inline double probe_prior_confidence(ChatBackend& backend, std::string_view claim) {
  ChatRequest req;
  req.messages = render(prior_probe_template(), {{"CLAIM", std::string(claim)}});
  req.temperature = 0.0;
  req.max_tokens = 1;
  req.logprobs = true;
  req.top_logprobs = 5;
  Completion c = backend.complete(req);
  require(c.first_token_logprobs.has_value(), ErrorCode::kLogprobsUnsupported,
          "backend '" + backend.name() + "' returned no logprobs");
  for (const auto& t : *c.first_token_logprobs) {
    std::string tok(trim(t.token));
    std::transform(tok.begin(), tok.end(), tok.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (tok == "yes") return std::clamp(std::exp(t.logprob), 0.0, 1.0);
  }
  fail(ErrorCode::kTokenNotFound, "token 'yes' not among the returned alternatives");
}

// Loss view of a utility table: l(a, w) = 1 - u(a, w).
inline UtilityTable loss_view(const UtilityTable& u) {
  std::vector<std::vector<double>> rows = u.values().to_rows();
  for (auto& r : rows) {
    for (double& x : r) x = 1.0 - x;
  }
  return UtilityTable::from_rows(rows);
}

// Action minimizing expected loss; identical to the utility-maximizing best
// response under the instance's tie-break.
inline std::size_t exact_receiver_act(const Belief& belief, const PersuasionInstance& instance) {
  return best_response(belief, instance);
}

// Direct argmin of expected loss; ties go to the lowest index.
inline std::size_t argmin_expected_loss(const Belief& belief, const UtilityTable& loss) {
  require(belief.size() == loss.num_states(), ErrorCode::kDimensionMismatch,
          "belief and loss table disagree on the number of states");
  std::size_t best = 0;
  double best_loss = loss.expected(0, belief.probs());
  for (std::size_t a = 1; a < loss.num_actions(); ++a) {
    double l = loss.expected(a, belief.probs());
    if (l < best_loss - kTieTol) {
      best = a;
      best_loss = l;
    }
  }
  return best;
}

}  // namespace persuade::agents

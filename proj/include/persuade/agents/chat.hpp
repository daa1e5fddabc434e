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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/error.hpp"

namespace persuade::agents {

enum class Role { kSystem, kUser, kAssistant };

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

inline Role parse_role(std::string_view s) {
  if (s == "system") return Role::kSystem;
  if (s == "user") return Role::kUser;
  if (s == "assistant") return Role::kAssistant;
  fail(ErrorCode::kInvalidArgument, "unknown chat role '" + std::string(s) + "'");
}

struct ChatMessage {
  ChatMessage(Role role_in, std::string content_in)
      : role(role_in), content(std::move(content_in)) {
    require(!content.empty(), ErrorCode::kInvalidArgument, "chat message content is empty");
  }

  Role role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::optional<double> temperature;
  std::optional<int> max_tokens;
  // Ask for the top-k alternatives of each generated token.
  bool logprobs = false;
  int top_logprobs = 0;
};

struct TokenLogprob {
  std::string token;
  double logprob;
};

struct Completion {
  std::string text;
  // Alternatives for the first generated token; empty optional when the
  // backend returned no logprob information.
  std::optional<std::vector<TokenLogprob>> first_token_logprobs;
};

// Anything that can answer a chat request: remote endpoints, deterministic
// stubs, recorded fixtures. Implementations must be safe to call from
// several threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual Completion complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

}  // namespace persuade::agents

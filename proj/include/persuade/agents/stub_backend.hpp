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

// In-process backends for offline runs and tests.
//
// StubBackend recognises each prompt family by its fixed wording and answers
// with well-formed tagged text derived only from (seed, prompt contents), so
// a full pipeline run is bit-reproducible. ScriptedBackend replays canned
// replies in order.

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/agents/chat.hpp"
#include "persuade/agents/tags.hpp"
#include "persuade/util/io.hpp"

namespace persuade::agents {

namespace detail {

inline std::string_view between(std::string_view text, std::string_view before,
                                std::string_view after) {
  auto b = text.find(before);
  if (b == std::string_view::npos) return {};
  b += before.size();
  auto e = text.find(after, b);
  if (e == std::string_view::npos) return text.substr(b);
  return text.substr(b, e - b);
}

inline std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace detail

// Transcript lines are written as "Sender: ..." / "Receiver: ..." (see
// envs::render_transcript); the stub counts them to know the round.
inline constexpr std::string_view kSenderLinePrefix = "Sender: ";
inline constexpr std::string_view kReceiverLinePrefix = "Receiver: ";

class StubBackend : public ChatBackend {
 public:
  explicit StubBackend(std::uint64_t seed = 0, std::string label = "stub")
      : seed_(seed), label_(std::move(label)) {}

  Completion complete(const ChatRequest& request) override {
    require(!request.messages.empty(), ErrorCode::kInvalidArgument, "empty chat request");
    const std::string& first = request.messages.front().content;
    const std::string& last = request.messages.back().content;
    if (first.find("agent named Sender") != std::string::npos) return {sender_reply(request), {}};
    if (first.find("agent named Receiver") != std::string::npos) return {receiver_reply(request), {}};
    if (last.find("Summarize the claim") != std::string::npos) return {summary_reply(last), {}};
    if (last.find("main strategies") != std::string::npos) {
      return {"<strategies>\n<strategy>Evidence</strategy>\n<strategy>Credibility</strategy>\n"
              "<strategy>Impact</strategy>\n</strategies>",
              {}};
    }
    if (last.find("Answer with a single word: yes or no") != std::string::npos) {
      return probe_reply(last);
    }
    return {"stub reply", {}};
  }

  std::string name() const override { return label_; }

  // Deterministic baseline score in {2, 3, 4} for a claim.
  int baseline_score(std::string_view claim) const {
    return 2 + static_cast<int>(hash(claim) % 3);
  }
  // Score change caused by one sender argument, in {0, 1}.
  int argument_effect(std::string_view argument) const {
    return static_cast<int>((hash(argument) >> 7) % 2);
  }
  double prior_confidence(std::string_view claim) const {
    return 0.05 + 0.9 * static_cast<double>(hash(claim) % 1000) / 999.0;
  }

 private:
  std::uint64_t hash(std::string_view s) const { return fnv1a64(s, 14695981039346656037ULL ^ seed_); }

  static std::string claim_of(const ChatRequest& req) {
    return std::string(trim(detail::between(req.messages.front().content, "Here is the claim:\n", "\n")));
  }

  // Transcript lines for the current turn, from the last user message.
  static std::string transcript_of(const ChatRequest& req) {
    std::string_view last = req.messages.back().content;
    return std::string(detail::between(last, "Here is the current transcript of the persuasion:",
                                       "Think about your current opinion"));
  }

  std::string sender_reply(const ChatRequest& req) const {
    std::string claim = claim_of(req);
    std::string transcript = transcript_of(req);
    std::size_t round = detail::count_occurrences(transcript, kSenderLinePrefix) + 1;
    static constexpr std::string_view kAngles[] = {
        "the available evidence points consistently in this direction",
        "independent experts who studied the question reached the same conclusion",
        "the practical consequences of ignoring it are large and lasting",
        "the strongest counterarguments fail once the details are examined",
    };
    std::string_view angle = kAngles[(hash(claim) + round) % 4];
    std::string argument = "Round " + std::to_string(round) + ": consider the claim that " + claim +
                           " The key point is that " + std::string(angle) + ".";
    return "<opinion>I support the claim.</opinion>\n<thinking>Pick the most informative angle for round " +
           std::to_string(round) + ".</thinking>\n<argument>" + argument + "</argument>";
  }

  std::string receiver_reply(const ChatRequest& req) const {
    std::string claim = std::string(trim(detail::between(req.messages.front().content,
                                                         "Here is the claim:\n", "\n")));
    std::string transcript = transcript_of(req);
    int score = baseline_score(claim);
    // Each sender argument in the transcript may move the score up by one.
    std::string_view rest = transcript;
    for (auto pos = rest.find(kSenderLinePrefix); pos != std::string_view::npos;
         pos = rest.find(kSenderLinePrefix, pos + 1)) {
      std::size_t begin = pos + kSenderLinePrefix.size();
      std::size_t end = rest.find("\n\n", begin);
      score += argument_effect(rest.substr(begin, end == std::string_view::npos ? end : end - begin));
    }
    score = std::min(score, 7);
    return "<score>" + std::to_string(score) + "</score>\n<opinion>My support for the claim is " +
           std::to_string(score) + " out of 7.</opinion>\n<thinking>Weigh the arguments seen so far." +
           "</thinking>\n<question>What further evidence supports the claim?</question>";
  }

  // First sentence of the post's title when it has one, else of its body.
  static std::string summary_reply(std::string_view prompt) {
    std::string_view post = prompt.substr(std::min(prompt.size(), prompt.find("assertive tone.") + 15));
    post = trim(post);
    if (auto title = post.find("Title:"); title != std::string_view::npos) {
      post = trim(post.substr(title + 6));
      if (post.substr(0, 4) == "CMV:") post = trim(post.substr(4));
    } else if (auto content = post.find("Content:"); content != std::string_view::npos) {
      post = trim(post.substr(content + 8));
    }
    auto stop = post.find_first_of(".!?\n");
    std::string sentence(trim(post.substr(0, stop == std::string_view::npos ? post.size() : stop)));
    return sentence + ".";
  }

  Completion probe_reply(std::string_view prompt) const {
    std::string claim(trim(detail::between(prompt, "Here is a claim:\n", "\nDo you agree")));
    double p = prior_confidence(claim);
    return {"yes", std::vector<TokenLogprob>{{"yes", std::log(p)}, {"no", std::log1p(-p)}}};
  }

  std::uint64_t seed_;
  std::string label_;
};

// Replays a fixed list of completions; every request is recorded.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<Completion> replies, std::string label = "scripted")
      : replies_(replies.begin(), replies.end()), label_(std::move(label)) {}

  static ScriptedBackend from_texts(const std::vector<std::string>& texts,
                                    std::string label = "scripted") {
    std::vector<Completion> c;
    for (const auto& t : texts) c.push_back({t, {}});
    return ScriptedBackend(std::move(c), std::move(label));
  }
  static std::shared_ptr<ScriptedBackend> shared(const std::vector<std::string>& texts,
                                                 std::string label = "scripted") {
    std::vector<Completion> c;
    for (const auto& t : texts) c.push_back({t, {}});
    return std::make_shared<ScriptedBackend>(std::move(c), std::move(label));
  }

  Completion complete(const ChatRequest& request) override {
    std::lock_guard lock(mu_);
    requests_.push_back(request);
    require(!replies_.empty(), ErrorCode::kTransport, "scripted backend has no replies left");
    Completion c = replies_.front();
    replies_.pop_front();
    return c;
  }
  std::string name() const override { return label_; }

  std::vector<ChatRequest> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 private:
  mutable std::mutex mu_;
  std::deque<Completion> replies_;
  std::vector<ChatRequest> requests_;
  std::string label_;
};

}  // namespace persuade::agents

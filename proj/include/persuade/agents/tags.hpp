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

// Tag grammar for model outputs: case-sensitive, first match wins, and
// surrounding prose is ignored. Section contents are whitespace-trimmed.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/error.hpp"

namespace persuade::agents {

class MissingTagError : public Error {
 public:
  explicit MissingTagError(std::vector<std::string> tags)
      : Error(ErrorCode::kMissingTag, "missing tags: " + join(tags)), tags_(std::move(tags)) {}

  const std::vector<std::string>& tags() const noexcept { return tags_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
    return out;
  }
  std::vector<std::string> tags_;
};

struct TagSpan {
  std::string content;
  std::size_t begin;  // offset of the opening tag
  std::size_t end;    // one past the closing tag
};

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view kWs = " \t\r\n\f\v";
  std::size_t b = s.find_first_not_of(kWs);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(kWs);
  return s.substr(b, e - b + 1);
}

// First section opened by any name in `open_names` and closed by the first
// subsequent tag from `close_names`.
inline std::optional<TagSpan> find_section(std::string_view text,
                                           const std::vector<std::string>& open_names,
                                           const std::vector<std::string>& close_names) {
  std::size_t open_pos = std::string_view::npos, open_len = 0;
  for (const auto& name : open_names) {
    std::string tag = "<" + name + ">";
    std::size_t p = text.find(tag);
    if (p < open_pos) {
      open_pos = p;
      open_len = tag.size();
    }
  }
  if (open_pos == std::string_view::npos) return std::nullopt;
  std::size_t body = open_pos + open_len;
  std::size_t close_pos = std::string_view::npos, close_len = 0;
  for (const auto& name : close_names) {
    std::string tag = "</" + name + ">";
    std::size_t p = text.find(tag, body);
    if (p < close_pos) {
      close_pos = p;
      close_len = tag.size();
    }
  }
  if (close_pos == std::string_view::npos) return std::nullopt;
  return TagSpan{std::string(trim(text.substr(body, close_pos - body))), open_pos,
                 close_pos + close_len};
}

inline std::optional<TagSpan> find_section(std::string_view text, const std::string& name) {
  return find_section(text, std::vector<std::string>{name}, std::vector<std::string>{name});
}

// Every well-formed <name>...</name> section, in order.
inline std::vector<std::string> find_all_sections(std::string_view text, const std::string& name) {
  std::vector<std::string> out;
  std::size_t offset = 0;
  while (offset < text.size()) {
    auto span = find_section(text.substr(offset), name);
    if (!span) break;
    out.push_back(span->content);
    offset += span->end;
  }
  return out;
}

struct ParsedSenderTurn {
  std::string opinion;
  std::string thinking;
  std::string argument;
  std::string raw;

  friend bool operator==(const ParsedSenderTurn&, const ParsedSenderTurn&) = default;
};

struct ParsedReceiverTurn {
  int score = 0;
  std::string opinion;
  std::string thinking;
  std::string question;
  std::string raw;

  friend bool operator==(const ParsedReceiverTurn&, const ParsedReceiverTurn&) = default;
};

namespace detail {

inline void check_disjoint(const std::vector<std::pair<std::string, TagSpan>>& spans) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      const auto& a = spans[i].second;
      const auto& b = spans[j].second;
      if (a.begin < b.end && b.begin < a.end) {
        fail(ErrorCode::kMissingTag,
             "sections <" + spans[i].first + "> and <" + spans[j].first + "> overlap");
      }
    }
  }
}

inline int parse_score(std::string_view s) {
  s = trim(s);
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc() || ptr != last) {
    fail(ErrorCode::kScoreNotInteger, "score '" + std::string(s) + "' is not an integer");
  }
  require(value >= 1 && value <= 7, ErrorCode::kScoreOutOfRange,
          "score " + std::to_string(value) + " outside 1..7");
  return value;
}

}  // namespace detail

inline ParsedSenderTurn parse_sender_output(std::string_view text) {
  std::vector<std::pair<std::string, TagSpan>> spans;
  std::vector<std::string> missing;
  for (const char* name : {"opinion", "thinking", "argument"}) {
    if (auto span = find_section(text, name)) {
      spans.emplace_back(name, *span);
    } else {
      missing.emplace_back(name);
    }
  }
  if (!missing.empty()) throw MissingTagError(std::move(missing));
  detail::check_disjoint(spans);
  return {spans[0].second.content, spans[1].second.content, spans[2].second.content,
          std::string(text)};
}

// Accepts both <question> and <questions> (opening and closing), since the
// receiver prompt itself mixes the two spellings. The question section is
// optional; score, opinion and thinking are required.
inline ParsedReceiverTurn parse_receiver_output(std::string_view text) {
  std::vector<std::pair<std::string, TagSpan>> spans;
  std::vector<std::string> missing;
  for (const char* name : {"score", "opinion", "thinking"}) {
    if (auto span = find_section(text, name)) {
      spans.emplace_back(name, *span);
    } else {
      missing.emplace_back(name);
    }
  }
  if (!missing.empty()) throw MissingTagError(std::move(missing));
  const std::vector<std::string> q = {"question", "questions"};
  std::string question;
  if (auto span = find_section(text, q, q)) {
    question = span->content;
    spans.emplace_back("question", *span);
  }
  detail::check_disjoint(spans);
  ParsedReceiverTurn out;
  out.score = detail::parse_score(spans[0].second.content);
  out.opinion = spans[1].second.content;
  out.thinking = spans[2].second.content;
  out.question = std::move(question);
  out.raw = std::string(text);
  return out;
}

}  // namespace persuade::agents

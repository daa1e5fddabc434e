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

// Claim corpora: JSONL, one {"id", "dataset", "claim"} object per line.
// Blank lines are ignored. Raw posts awaiting summarization use the same
// layout with "post" in place of "claim".

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "persuade/agents/agents.hpp"
#include "persuade/agents/chat.hpp"
#include "persuade/agents/prompts.hpp"
#include "persuade/agents/tags.hpp"
#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

namespace persuade::envs {

inline constexpr std::array<std::string_view, 5> kDatasets = {"anthropic", "cmv", "ddo",
                                                              "perspectrum", "custom"};

inline bool is_known_dataset(std::string_view d) {
  return std::find(kDatasets.begin(), kDatasets.end(), d) != kDatasets.end();
}

struct ClaimRecord {
  std::string id;
  std::string dataset;
  std::string claim;

  friend bool operator==(const ClaimRecord&, const ClaimRecord&) = default;
};

inline json claim_to_json(const ClaimRecord& c) {
  return {{"id", c.id}, {"dataset", c.dataset}, {"claim", c.claim}};
}

namespace detail {

inline std::string string_field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(ErrorCode::kParseError, where + ": missing field \"" + name + "\"");
  if (!it->is_string()) fail(ErrorCode::kParseError, where + ": field \"" + name + "\" must be a string");
  return it->get<std::string>();
}

inline ClaimRecord claim_from_json(const json& obj, const std::string& where,
                                   const char* text_field = "claim") {
  if (!obj.is_object()) fail(ErrorCode::kParseError, where + ": expected a JSON object");
  ClaimRecord c;
  c.id = string_field(obj, "id", where);
  c.dataset = string_field(obj, "dataset", where);
  c.claim = string_field(obj, text_field, where);
  if (c.id.empty()) fail(ErrorCode::kParseError, where + ": empty id");
  if (!is_known_dataset(c.dataset)) {
    fail(ErrorCode::kParseError, where + ": unknown dataset \"" + c.dataset + "\"");
  }
  if (agents::trim(c.claim).empty()) {
    fail(ErrorCode::kParseError, where + ": empty " + text_field);
  }
  return c;
}

}  // namespace detail

inline std::vector<ClaimRecord> parse_claims(std::string_view text, const std::string& source,
                                             const char* text_field = "claim") {
  std::vector<ClaimRecord> out;
  std::unordered_set<std::string> seen;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (agents::trim(lines[i]).empty()) continue;
    std::string where = source + ":" + std::to_string(i + 1);
    json obj = json::parse(lines[i], nullptr, false);
    if (obj.is_discarded()) fail(ErrorCode::kParseError, where + ": invalid JSON");
    ClaimRecord c = detail::claim_from_json(obj, where, text_field);
    if (!seen.insert(c.id).second) {
      fail(ErrorCode::kDuplicateId, where + ": duplicate id \"" + c.id + "\"");
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ClaimRecord> load_claims(const std::filesystem::path& path) {
  return parse_claims(read_file(path), path.string());
}

// Raw posts; the `claim` member holds the post text.
inline std::vector<ClaimRecord> load_posts(const std::filesystem::path& path) {
  return parse_claims(read_file(path), path.string(), "post");
}

inline std::string summarize_claim(agents::ChatBackend& backend, std::string_view post_text) {
  require(!agents::trim(post_text).empty(), ErrorCode::kInvalidArgument, "post text is empty");
  auto messages = agents::render(agents::claim_summarization_template(),
                                 {{"TRANSCRIPT", std::string(post_text)}});
  return std::string(agents::trim(agents::llm_complete(backend, std::move(messages))));
}

}  // namespace persuade::envs

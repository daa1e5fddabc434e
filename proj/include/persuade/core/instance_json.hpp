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

// Instance file format (one JSON document):
//
//   {
//     "schema_version": 1,                      optional
//     "states":  ["innocent", "guilty"],
//     "actions": ["acquit", "convict"],
//     "prior":   [0.7, 0.3],
//     "receiver_u": [[1, 0], [0, 1]],           rows = actions, cols = states
//     "sender_v":   [[0, 0], [1, 1]],
//     "tie_break": "sender_preferred"           or "lowest_index"; optional
//   }

#include <filesystem>
#include <string>
#include <vector>

#include "persuade/core/types.hpp"
#include "persuade/util/io.hpp"

namespace persuade {

namespace detail {

inline const json& field(const json& doc, const char* name, const std::string& source) {
  auto it = doc.find(name);
  require(it != doc.end(), ErrorCode::kParseError,
          source + ": missing field '" + name + "'");
  return *it;
}

template <typename T>
T field_as(const json& doc, const char* name, const std::string& source) {
  try {
    return field(doc, name, source).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, source + ": field '" + name + "' has wrong type (" +
                                     e.what() + ")");
  }
}

inline std::string tie_break_name(TieBreak t) {
  return t == TieBreak::kSenderPreferred ? "sender_preferred" : "lowest_index";
}

inline TieBreak parse_tie_break(const std::string& s, const std::string& source) {
  if (s == "sender_preferred") return TieBreak::kSenderPreferred;
  if (s == "lowest_index") return TieBreak::kLowestIndex;
  fail(ErrorCode::kParseError, source + ": unknown tie_break '" + s + "'");
}

}  // namespace detail

inline PersuasionInstance instance_from_json(const json& doc,
                                             const std::string& source = "<instance>") {
  require(doc.is_object(), ErrorCode::kParseError, source + ": instance must be an object");
  using Rows = std::vector<std::vector<double>>;
  auto states = detail::field_as<std::vector<std::string>>(doc, "states", source);
  auto actions = detail::field_as<std::vector<std::string>>(doc, "actions", source);
  auto prior = detail::field_as<std::vector<double>>(doc, "prior", source);
  auto ru = detail::field_as<Rows>(doc, "receiver_u", source);
  auto sv = detail::field_as<Rows>(doc, "sender_v", source);
  TieBreak tb = TieBreak::kSenderPreferred;
  if (doc.contains("tie_break")) {
    tb = detail::parse_tie_break(detail::field_as<std::string>(doc, "tie_break", source), source);
  }
  try {
    return PersuasionInstance(StateSpace(std::move(states)), ActionSpace(std::move(actions)),
                              Belief(std::move(prior)), UtilityTable::from_rows(ru),
                              UtilityTable::from_rows(sv), tb);
  } catch (const Error& e) {
    fail(e.code(), source + ": " + e.what());
  }
}

inline json instance_to_json(const PersuasionInstance& inst) {
  return json{
      {"schema_version", kSchemaVersion},
      {"states", inst.states.labels()},
      {"actions", inst.actions.labels()},
      {"prior", std::vector<double>(inst.prior.probs().begin(), inst.prior.probs().end())},
      {"receiver_u", inst.receiver_u.values().to_rows()},
      {"sender_v", inst.sender_v.values().to_rows()},
      {"tie_break", detail::tie_break_name(inst.tie_break)},
  };
}

inline PersuasionInstance load_instance(const std::filesystem::path& path) {
  std::string text = read_file(path);
  return instance_from_json(parse_json(text, path.string()), path.string());
}

}  // namespace persuade

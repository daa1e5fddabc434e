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

// Semantic similarity of sender messages at the same turn position across
// different claims. Lower similarity means more claim-specific messages.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persuade/agents/http_backend.hpp"
#include "persuade/envs/episode.hpp"
#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

namespace persuade::metrics {

inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "vectors differ in length");
  require(!a.empty(), ErrorCode::kZeroVector, "empty vector");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  require(na > 0.0 && nb > 0.0, ErrorCode::kZeroVector, "cosine of a zero vector");
  // sqrt(na * nb) rather than sqrt(na) * sqrt(nb): identical inputs give 1 exactly.
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

// Signed feature hashing of lower-cased alphanumeric tokens. Deterministic
// and dependency-free; meant for offline tests, not semantic quality.
class HashingEmbedder : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dim = 256) : dim_(dim) {
    require(dim >= 1, ErrorCode::kInvalidArgument, "embedding dimension must be >= 1");
  }

  std::vector<double> embed(std::string_view text) override {
    std::vector<double> v(dim_, 0.0);
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      std::uint64_t h = fnv1a64(token);
      v[h % dim_] += (h >> 63) ? -1.0 : 1.0;
      token.clear();
    };
    for (unsigned char ch : text) {
      if (std::isalnum(ch)) {
        token += static_cast<char>(std::tolower(ch));
      } else {
        flush();
      }
    }
    flush();
    return v;
  }

  std::string name() const override { return "hashing-" + std::to_string(dim_); }

 private:
  std::size_t dim_;
};

class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(agents::LLMEndpointConfig cfg) : client_(std::move(cfg)) {}
  std::vector<double> embed(std::string_view text) override { return client_.embed(std::string(text)); }
  std::string name() const override { return client_.name(); }

 private:
  agents::HttpEmbeddingClient client_;
};

struct PairStats {
  std::size_t pairs = 0;
  double mean = 0.0;
};

struct PositionSimilarity {
  std::string position;  // "S-1" or "D-<round>"
  std::size_t messages = 0;
  PairStats overall;
  std::map<std::string, PairStats> per_dataset;
};

struct SimilarityReport {
  std::string embedder;
  std::size_t dimension = 0;
  std::vector<PositionSimilarity> positions;
  std::vector<std::string> skipped_positions;  // fewer than two messages
  std::size_t excluded_messages = 0;           // embedder failures
};

inline std::string position_label(agents::Mode mode, std::size_t round) {
  return std::string(mode == agents::Mode::kStatic ? "S-" : "D-") + std::to_string(round);
}

// Mean cosine similarity over all unordered pairs of messages from
// different claims at the same position, overall and within each dataset.
inline SimilarityReport message_similarity(const std::vector<envs::Transcript>& transcripts,
                                           Embedder& embedder) {
  struct Item {
    std::string claim_id;
    std::string dataset;
    std::vector<double> vec;
  };
  auto order = [](const std::string& a, const std::string& b) {
    // S-* before D-*, then by round number.
    auto key = [](const std::string& p) { return std::make_pair(p[0] != 'S', std::stoul(p.substr(2))); };
    return key(a) < key(b);
  };
  std::map<std::string, std::vector<Item>, decltype(order)> by_position(order);

  SimilarityReport rep;
  rep.embedder = embedder.name();
  for (const auto& t : transcripts) {
    if (!t.valid) continue;
    for (std::size_t r = 0; r < t.turns.size(); ++r) {
      Item item{t.claim.id, t.claim.dataset, {}};
      try {
        item.vec = embedder.embed(t.turns[r].sender.argument);
        bool nonzero = std::any_of(item.vec.begin(), item.vec.end(), [](double x) { return x != 0.0; });
        if (item.vec.empty() || !nonzero) fail(ErrorCode::kEmbedderFailure, "zero embedding");
      } catch (const Error&) {
        ++rep.excluded_messages;
        continue;
      }
      if (rep.dimension == 0) rep.dimension = item.vec.size();
      require(item.vec.size() == rep.dimension, ErrorCode::kEmbedderFailure,
              "embedder returned vectors of different lengths");
      by_position[position_label(t.config.mode, r + 1)].push_back(std::move(item));
    }
  }

  for (const auto& [pos, items] : by_position) {
    PositionSimilarity ps;
    ps.position = pos;
    ps.messages = items.size();
    double total = 0.0;
    std::map<std::string, double> ds_total;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (items[i].claim_id == items[j].claim_id) continue;
        double s = cosine_similarity(items[i].vec, items[j].vec);
        total += s;
        ++ps.overall.pairs;
        if (items[i].dataset == items[j].dataset) {
          ds_total[items[i].dataset] += s;
          ++ps.per_dataset[items[i].dataset].pairs;
        }
      }
    }
    if (ps.overall.pairs == 0) {
      rep.skipped_positions.push_back(pos);
      continue;
    }
    ps.overall.mean = total / static_cast<double>(ps.overall.pairs);
    for (auto& [d, st] : ps.per_dataset) st.mean = ds_total[d] / static_cast<double>(st.pairs);
    rep.positions.push_back(std::move(ps));
  }
  return rep;
}

inline json similarity_report_to_json(const SimilarityReport& r) {
  json positions = json::array();
  for (const auto& p : r.positions) {
    json per = json::object();
    for (const auto& [d, st] : p.per_dataset) per[d] = {{"pairs", st.pairs}, {"mean", st.mean}};
    positions.push_back({{"position", p.position},
                         {"messages", p.messages},
                         {"pairs", p.overall.pairs},
                         {"mean", p.overall.mean},
                         {"per_dataset", per}});
  }
  return {{"embedder", r.embedder},
          {"dimension", r.dimension},
          {"positions", positions},
          {"skipped_positions", r.skipped_positions},
          {"excluded_messages", r.excluded_messages}};
}

// position,scope,pairs,mean where scope is "overall" or a dataset.
inline std::string similarity_report_csv(const SimilarityReport& r) {
  std::string out = "position,scope,pairs,mean\n";
  char buf[64];
  for (const auto& p : r.positions) {
    std::snprintf(buf, sizeof buf, "%.9f", p.overall.mean);
    out += p.position + ",overall," + std::to_string(p.overall.pairs) + "," + buf + "\n";
    for (const auto& [d, st] : p.per_dataset) {
      std::snprintf(buf, sizeof buf, "%.9f", st.mean);
      out += p.position + "," + d + "," + std::to_string(st.pairs) + "," + buf + "\n";
    }
  }
  return out;
}

}  // namespace persuade::metrics

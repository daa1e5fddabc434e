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

// Persuasion-gain aggregates: per (sender, dataset, mode) cells, and score
// trajectories bucketed by the receiver's prior confidence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "persuade/envs/claims.hpp"
#include "persuade/envs/episode.hpp"
#include "persuade/util/io.hpp"

namespace persuade::metrics {

struct CellKey {
  std::string sender;
  std::string dataset;
  std::string mode;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct GainCell {
  std::size_t count = 0;    // valid transcripts
  std::size_t invalid = 0;  // transcripts excluded as invalid
  double mean = 0.0;
  std::optional<double> stderr_gain;  // undefined for count < 2

  bool empty() const { return count == 0; }
};

struct GainTable {
  std::map<CellKey, GainCell> cells;
  // Keyed by (sender, "", mode): mean over every valid transcript of that
  // sender and mode, i.e. the instance-weighted mean of the dataset cells.
  std::map<CellKey, GainCell> averages;
  std::size_t total_valid = 0;
  std::size_t total_invalid = 0;
};

namespace detail {

class MeanAccumulator {
 public:
  void add(double x) {
    ++n_;
    sum_ += x;
    sum_sq_ += x * x;
  }
  GainCell cell(std::size_t invalid) const {
    GainCell c;
    c.count = n_;
    c.invalid = invalid;
    if (n_ == 0) return c;
    double n = static_cast<double>(n_);
    c.mean = sum_ / n;
    if (n_ >= 2) {
      double var = std::max(0.0, (sum_sq_ - n * c.mean * c.mean) / (n - 1.0));
      c.stderr_gain = std::sqrt(var / n);
    }
    return c;
  }

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Datasets present in the table, in the canonical corpus order.
inline std::vector<std::string> datasets_of(const GainTable& t) {
  std::set<std::string> present;
  for (const auto& [k, _] : t.cells) present.insert(k.dataset);
  std::vector<std::string> out;
  for (auto d : envs::kDatasets) {
    if (present.erase(std::string(d))) out.emplace_back(d);
  }
  out.insert(out.end(), present.begin(), present.end());
  return out;
}

}  // namespace detail

inline GainTable gain_table(const std::vector<envs::Transcript>& transcripts) {
  std::map<CellKey, detail::MeanAccumulator> acc, avg;
  std::map<CellKey, std::size_t> invalid, avg_invalid;
  GainTable table;
  for (const auto& t : transcripts) {
    CellKey key{t.config.sender_label, t.claim.dataset, std::string(agents::mode_name(t.config.mode))};
    CellKey avg_key{key.sender, "", key.mode};
    acc[key];
    avg[avg_key];
    if (!t.valid) {
      ++invalid[key];
      ++avg_invalid[avg_key];
      ++table.total_invalid;
      continue;
    }
    double g = envs::compute_reward(t);
    acc[key].add(g);
    avg[avg_key].add(g);
    ++table.total_valid;
  }
  for (const auto& [k, a] : acc) table.cells[k] = a.cell(invalid[k]);
  for (const auto& [k, a] : avg) table.averages[k] = a.cell(avg_invalid[k]);
  return table;
}

inline json gain_cell_to_json(const GainCell& c) {
  json j = {{"count", c.count}, {"invalid", c.invalid}};
  if (c.empty()) {
    j["empty"] = true;
    j["mean"] = nullptr;
  } else {
    j["mean"] = c.mean;
  }
  j["stderr"] = c.stderr_gain ? json(*c.stderr_gain) : json(nullptr);
  return j;
}

inline json gain_table_to_json(const GainTable& t) {
  json cells = json::array(), averages = json::array();
  for (const auto& [k, c] : t.cells) {
    json j = gain_cell_to_json(c);
    j["sender"] = k.sender;
    j["dataset"] = k.dataset;
    j["mode"] = k.mode;
    cells.push_back(std::move(j));
  }
  for (const auto& [k, c] : t.averages) {
    json j = gain_cell_to_json(c);
    j["sender"] = k.sender;
    j["mode"] = k.mode;
    averages.push_back(std::move(j));
  }
  return {{"cells", cells},
          {"averages", averages},
          {"total_valid", t.total_valid},
          {"total_invalid", t.total_invalid}};
}

// One markdown table per mode; rows are senders, columns datasets then the
// average. Cells read "mean ± stderr (n)"; empty cells read "n/a".
inline std::string gain_table_markdown(const GainTable& t, int digits = 2) {
  auto datasets = detail::datasets_of(t);
  std::set<std::string> modes, senders;
  for (const auto& [k, _] : t.cells) {
    modes.insert(k.mode);
    senders.insert(k.sender);
  }
  auto render = [&](const GainCell* c) -> std::string {
    if (c == nullptr || c->empty()) return "n/a";
    std::string s = detail::fixed(c->mean, digits);
    if (c->stderr_gain) s += " ± " + detail::fixed(*c->stderr_gain, digits);
    return s + " (" + std::to_string(c->count) + ")";
  };
  std::string out;
  for (const auto& mode : modes) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"Sender"};
    header.insert(header.end(), datasets.begin(), datasets.end());
    header.emplace_back("Average");
    rows.push_back(header);
    for (const auto& sender : senders) {
      std::vector<std::string> row = {sender};
      bool any = false;
      for (const auto& d : datasets) {
        auto it = t.cells.find({sender, d, mode});
        any = any || it != t.cells.end();
        row.push_back(render(it == t.cells.end() ? nullptr : &it->second));
      }
      if (!any) continue;
      auto it = t.averages.find({sender, "", mode});
      row.push_back(render(it == t.averages.end() ? nullptr : &it->second));
      rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        // Display width: count UTF-8 lead bytes only.
        std::size_t w = 0;
        for (unsigned char ch : r[i]) w += (ch & 0xC0) != 0x80;
        width[i] = std::max(width[i], w);
      }
    }
    auto emit = [&](const std::vector<std::string>& r) {
      out += "|";
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::size_t w = 0;
        for (unsigned char ch : r[i]) w += (ch & 0xC0) != 0x80;
        out += " " + r[i] + std::string(width[i] - w, ' ') + " |";
      }
      out += "\n";
    };
    out += "### " + mode + "\n\n";
    emit(rows[0]);
    out += "|";
    for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
    out += "\n";
    for (std::size_t i = 1; i < rows.size(); ++i) emit(rows[i]);
    out += "\n";
  }
  return out;
}

inline std::string gain_table_csv(const GainTable& t) {
  std::string out = "sender,dataset,mode,count,invalid,mean,stderr\n";
  auto line = [&](const CellKey& k, const GainCell& c, const std::string& dataset) {
    out += k.sender + "," + dataset + "," + k.mode + "," + std::to_string(c.count) + "," +
           std::to_string(c.invalid) + "," + (c.empty() ? "" : detail::fixed(c.mean, 6)) + "," +
           (c.stderr_gain ? detail::fixed(*c.stderr_gain, 6) : "") + "\n";
  };
  for (const auto& [k, c] : t.cells) line(k, c, k.dataset);
  for (const auto& [k, c] : t.averages) line(k, c, "average");
  return out;
}

// ---- prior-confidence buckets -------------------------------------------

struct Bucket {
  std::string name;
  std::size_t claims = 0;
  // Entry r is the mean of score_{r+1} - baseline over transcripts with at
  // least r+1 rounds; counts alongside.
  std::vector<double> mean_change;
  std::vector<std::size_t> counts;
};

struct BucketReport {
  double low_threshold = 0.0;
  double high_threshold = 0.0;
  std::array<Bucket, 3> buckets;
  std::size_t missing_confidence = 0;
};

// Linear-interpolation quantile of a sorted sample.
inline double quantile(const std::vector<double>& sorted, double q) {
  require(!sorted.empty(), ErrorCode::kInvalidArgument, "quantile of an empty sample");
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// low: c < t1; medium: t1 <= c < t2; high: c >= t2. Without explicit
// thresholds the terciles of the observed confidences are used.
inline BucketReport bucket_by_prior(const std::vector<envs::Transcript>& transcripts,
                                    const std::unordered_map<std::string, double>& confidences,
                                    std::optional<std::pair<double, double>> thresholds = std::nullopt) {
  BucketReport rep;
  rep.buckets[0].name = "low";
  rep.buckets[1].name = "medium";
  rep.buckets[2].name = "high";

  std::vector<std::pair<const envs::Transcript*, double>> usable;
  for (const auto& t : transcripts) {
    if (!t.valid) continue;
    auto it = confidences.find(t.claim.id);
    if (it == confidences.end()) {
      ++rep.missing_confidence;
      continue;
    }
    usable.emplace_back(&t, it->second);
  }
  if (thresholds) {
    require(thresholds->first <= thresholds->second, ErrorCode::kInvalidArgument,
            "bucket thresholds must be ordered");
    std::tie(rep.low_threshold, rep.high_threshold) = *thresholds;
  } else if (!usable.empty()) {
    std::vector<double> c;
    for (const auto& u : usable) c.push_back(u.second);
    std::sort(c.begin(), c.end());
    rep.low_threshold = quantile(c, 1.0 / 3.0);
    rep.high_threshold = quantile(c, 2.0 / 3.0);
  }

  std::array<std::vector<double>, 3> sums;
  for (const auto& [t, c] : usable) {
    std::size_t b = c < rep.low_threshold ? 0 : (c < rep.high_threshold ? 1 : 2);
    Bucket& bucket = rep.buckets[b];
    ++bucket.claims;
    for (std::size_t r = 0; r < t->turns.size(); ++r) {
      if (bucket.counts.size() <= r) {
        bucket.counts.resize(r + 1, 0);
        sums[b].resize(r + 1, 0.0);
      }
      ++bucket.counts[r];
      sums[b][r] += t->turns[r].receiver.score - t->baseline_score();
    }
  }
  for (std::size_t b = 0; b < 3; ++b) {
    auto& bucket = rep.buckets[b];
    bucket.mean_change.resize(bucket.counts.size());
    for (std::size_t r = 0; r < bucket.counts.size(); ++r) {
      bucket.mean_change[r] = sums[b][r] / static_cast<double>(bucket.counts[r]);
    }
  }
  return rep;
}

inline json bucket_report_to_json(const BucketReport& r) {
  json buckets = json::array();
  for (const auto& b : r.buckets) {
    buckets.push_back({{"name", b.name},
                       {"claims", b.claims},
                       {"mean_change", b.mean_change},
                       {"counts", b.counts}});
  }
  return {{"low_threshold", r.low_threshold},
          {"high_threshold", r.high_threshold},
          {"buckets", buckets},
          {"missing_confidence", r.missing_confidence}};
}

// Long-format CSV for plotting: bucket,round,count,mean_change.
inline std::string bucket_report_csv(const BucketReport& r) {
  std::string out = "bucket,round,count,mean_change\n";
  for (const auto& b : r.buckets) {
    for (std::size_t i = 0; i < b.counts.size(); ++i) {
      out += b.name + "," + std::to_string(i + 1) + "," + std::to_string(b.counts[i]) + "," +
             detail::fixed(b.mean_change[i], 6) + "\n";
    }
  }
  return out;
}

}  // namespace persuade::metrics

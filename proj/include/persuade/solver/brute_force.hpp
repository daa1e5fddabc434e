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

// Grid oracle for the sender's value: the best Bayes-plausible split of the
// prior into posteriors drawn from the simplex grid {k / resolution}. It
// never uses the LP and is only meant for checking solve_optimal on tiny
// instances (|states| <= 3).
//
// Two states: every bracketing pair of grid points is enumerated.
//
// Three states: grid points are labelled by the receiver's best response.
// v_hat is linear on each label class, so any grid point is a convex
// combination of extreme points of its class's hull with the same value.
// Enumerating pairs and triangles of those extreme points is therefore
// exactly the best grid split, at a fraction of the cost of all triangles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "persuade/core/belief_ops.hpp"
#include "persuade/core/types.hpp"

namespace persuade {

namespace detail {

struct GridPoint {
  std::int64_t x;  // count of state 1
  std::int64_t y;  // count of state 2
};

inline std::int64_t cross(const GridPoint& o, const GridPoint& a, const GridPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; collinear points are dropped.
inline std::vector<GridPoint> convex_hull(std::vector<GridPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const GridPoint& a, const GridPoint& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<GridPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

struct Candidate {
  double x;
  double y;
  double value;
};

inline double brute_force_two_states(const PersuasionInstance& inst, std::size_t n) {
  const double target = inst.prior[1];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    vals[i] = sender_value_at_belief(Belief::binary(static_cast<double>(i) / n), inst);
  }
  double best = sender_value_at_belief(inst.prior, inst);
  for (std::size_t lo = 0; lo <= n; ++lo) {
    double plo = static_cast<double>(lo) / n;
    if (plo > target) break;
    for (std::size_t hi = lo + 1; hi <= n; ++hi) {
      double phi = static_cast<double>(hi) / n;
      if (phi < target) continue;
      double w_hi = (target - plo) / (phi - plo);
      best = std::max(best, (1.0 - w_hi) * vals[lo] + w_hi * vals[hi]);
    }
  }
  return best;
}

inline double brute_force_three_states(const PersuasionInstance& inst, std::size_t n) {
  const auto N = static_cast<std::int64_t>(n);
  const double nd = static_cast<double>(n);
  std::vector<std::vector<GridPoint>> classes(inst.num_actions());
  for (std::int64_t x = 0; x <= N; ++x) {
    for (std::int64_t y = 0; x + y <= N; ++y) {
      Belief b({static_cast<double>(N - x - y) / nd, static_cast<double>(x) / nd,
                static_cast<double>(y) / nd});
      classes[best_response(b, inst)].push_back({x, y});
    }
  }
  std::vector<Candidate> cand;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    if (classes[a].empty()) continue;
    for (const auto& g : convex_hull(classes[a])) {
      double px = static_cast<double>(g.x) / nd, py = static_cast<double>(g.y) / nd;
      std::array<double, 3> probs{1.0 - px - py, px, py};
      cand.push_back({px, py, inst.sender_v.expected(a, probs)});
    }
  }

  const double tx = inst.prior[1], ty = inst.prior[2];
  constexpr double kEps = 1e-12;
  double best = sender_value_at_belief(inst.prior, inst);

  // Pairs: the prior on the segment between two candidates.
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      double dx = cand[j].x - cand[i].x, dy = cand[j].y - cand[i].y;
      double rx = tx - cand[i].x, ry = ty - cand[i].y;
      double len2 = dx * dx + dy * dy;
      if (len2 == 0.0 || std::abs(dx * ry - dy * rx) > kEps) continue;
      double t = (dx * rx + dy * ry) / len2;
      if (t < -kEps || t > 1.0 + kEps) continue;
      t = std::clamp(t, 0.0, 1.0);
      best = std::max(best, (1.0 - t) * cand[i].value + t * cand[j].value);
    }
  }
  // Triangles containing the prior; weights are barycentric coordinates.
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      for (std::size_t k = j + 1; k < cand.size(); ++k) {
        const auto &a = cand[i], &b = cand[j], &c = cand[k];
        double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        if (std::abs(det) < 1e-15) continue;
        double wb = ((tx - a.x) * (c.y - a.y) - (c.x - a.x) * (ty - a.y)) / det;
        double wc = ((b.x - a.x) * (ty - a.y) - (tx - a.x) * (b.y - a.y)) / det;
        double wa = 1.0 - wb - wc;
        if (wa < -kEps || wb < -kEps || wc < -kEps) continue;
        best = std::max(best, wa * a.value + wb * b.value + wc * c.value);
      }
    }
  }
  return best;
}

}  // namespace detail

inline double brute_force_value(const PersuasionInstance& instance, std::size_t resolution) {
  require(instance.num_states() <= 3, ErrorCode::kStateSpaceTooLarge,
          "grid oracle supports at most 3 states (got " +
              std::to_string(instance.num_states()) + ")");
  require(resolution >= 1, ErrorCode::kInvalidArgument, "resolution must be >= 1");
  if (instance.num_states() == 1 || instance.num_actions() == 1) {
    return sender_value_at_belief(instance.prior, instance);
  }
  if (instance.num_states() == 2) return detail::brute_force_two_states(instance, resolution);
  return detail::brute_force_three_states(instance, resolution);
}

}  // namespace persuade

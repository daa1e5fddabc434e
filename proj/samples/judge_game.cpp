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

// Solves the prosecutor/judge game and prints the optimal recommendation
// scheme with the posteriors it induces.

#include <cstdio>

#include "persuade/persuade.hpp"

int main() {
  using namespace persuade;
  PersuasionInstance judge(StateSpace({"innocent", "guilty"}), ActionSpace({"acquit", "convict"}),
                           Belief::binary(0.3), UtilityTable::from_rows({{1, 0}, {0, 1}}),
                           UtilityTable::from_rows({{0, 0}, {1, 1}}));
  auto res = solve_optimal(judge);
  std::printf("value %.4f  (no information %.4f, gain %.4f)\n", res.value, res.prior_value, res.gain);
  for (const auto& wp : res.posteriors) {
    std::printf("  Pr %.4f  posterior (%.4f, %.4f)  -> %s\n", wp.probability, wp.posterior[0], wp.posterior[1],
                judge.actions.label(best_response(wp.posterior, judge)).c_str());
  }
  auto report = verify_scheme(judge, res.scheme);
  std::printf("plausible %d  obedient %d\n", report.plausible, report.obedient);
}

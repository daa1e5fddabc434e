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

// Compares no disclosure, full disclosure and delayed disclosure in the
// absorbing-state model.

#include <cstdio>

#include "persuade/persuade.hpp"

int main() {
  using namespace persuade::dynamic;
  DynamicConfig cfg;
  cfg.seed = 42;
  for (const auto& s : compare_policies(cfg, 5000)) {
    std::printf("%-8s payoff %.3f +- %.3f\n", std::string(policy_name(s.policy)).c_str(), s.mean_payoff,
                s.stderr_payoff);
  }
}

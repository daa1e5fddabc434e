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

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "persuade/persuade.hpp"

namespace persuade::testing {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(PERSUADE_SOURCE_DIR) / rel;
}

// Fresh, empty scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::path(PERSUADE_TEST_TMP) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline PersuasionInstance judge_instance() {
  return PersuasionInstance(StateSpace({"innocent", "guilty"}), ActionSpace({"acquit", "convict"}),
                            Belief::binary(0.3), UtilityTable::from_rows({{1, 0}, {0, 1}}),
                            UtilityTable::from_rows({{0, 0}, {1, 1}}));
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = e(rng));
  for (auto& x : v) x /= s;
  return v;
}

inline UtilityTable random_utility(std::mt19937_64& rng, std::size_t actions, std::size_t states) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows(actions, std::vector<double>(states));
  for (auto& r : rows)
    for (auto& x : r) x = u(rng);
  return UtilityTable::from_rows(rows);
}

inline PersuasionInstance random_instance(std::mt19937_64& rng, std::size_t states, std::size_t actions) {
  return PersuasionInstance(StateSpace::numbered(states), ActionSpace::numbered(actions),
                            Belief(random_simplex(rng, states)), random_utility(rng, actions, states),
                            random_utility(rng, actions, states));
}

inline SignalingScheme random_scheme(std::mt19937_64& rng, std::size_t states, std::size_t signals) {
  std::vector<std::vector<double>> rows;
  for (std::size_t w = 0; w < states; ++w) rows.push_back(random_simplex(rng, signals));
  std::vector<std::string> names;
  for (std::size_t s = 0; s < signals; ++s) names.push_back("s" + std::to_string(s));
  return SignalingScheme(names, Matrix::from_rows(rows));
}

#ifdef PERSUADE_CLI_PATH
// Runs the CLI with `args` (already shell-quoted); returns its exit status.
inline int run_cli(const std::string& args, const std::string& log = "/dev/null") {
  std::string cmd = std::string("\"") + PERSUADE_CLI_PATH + "\" " + args + " >" + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
#endif

}  // namespace persuade::testing

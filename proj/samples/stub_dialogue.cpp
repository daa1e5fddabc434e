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

// One dynamic dialogue between stub agents, printed as the agents see it.

#include <iostream>
#include <memory>

#include "persuade/persuade.hpp"

int main() {
  using namespace persuade;
  auto backend = std::make_shared<agents::StubBackend>(3);
  agents::LlmSender sender(backend, agents::Mode::kDynamic);
  agents::LlmReceiver receiver(backend);
  envs::ClaimRecord claim{"demo", "custom", "Cities should replace parking lots with parks."};
  auto t = envs::run_episode(claim, envs::EpisodeConfig::for_mode(agents::Mode::kDynamic, 3), sender, receiver);
  std::cout << envs::render_dialogue(t) << "\n\nreward " << envs::compute_reward(t) << "\n";
}

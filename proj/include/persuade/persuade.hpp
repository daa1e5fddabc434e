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

#include "persuade/error.hpp"
#include "persuade/util/io.hpp"

#include "persuade/core/belief_ops.hpp"
#include "persuade/core/instance_json.hpp"
#include "persuade/core/types.hpp"

#include "persuade/solver/brute_force.hpp"
#include "persuade/solver/optimal.hpp"
#include "persuade/solver/simplex.hpp"

#include "persuade/dynamic/simulator.hpp"

#include "persuade/agents/agents.hpp"
#include "persuade/agents/chat.hpp"
#include "persuade/agents/http_backend.hpp"
#include "persuade/agents/prompts.hpp"
#include "persuade/agents/stub_backend.hpp"
#include "persuade/agents/tags.hpp"

#include "persuade/envs/claims.hpp"
#include "persuade/envs/episode.hpp"
#include "persuade/envs/rollouts.hpp"

#include "persuade/metrics/gains.hpp"
#include "persuade/metrics/similarity.hpp"
#include "persuade/metrics/strategies.hpp"

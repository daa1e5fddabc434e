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

#include <gtest/gtest.h>

#include <fstream>

#include "test_support.hpp"

namespace persuade {
namespace {

namespace fs = std::filesystem;
using testing::run_cli;
using testing::scratch_dir;
using testing::source_path;

json read_json(const fs::path& p) { return parse_json(read_file(p), p.string()); }

std::size_t count_lines(const fs::path& p) {
  std::size_t n = 0;
  for (const auto& l : split_lines(read_file(p))) n += !l.empty();
  return n;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

TEST(Cli, SolveJudgeWithOracle) {
  auto dir = scratch_dir("cli_solve");
  ASSERT_EQ(run_cli("--out " + quoted(dir) + " solve --oracle --instance " +
                    quoted(source_path("data/instances/judge.json"))),
            0);
  json j = read_json(dir / "solve.json");
  EXPECT_NEAR(j["value"].get<double>(), 0.6, 1e-9);
  EXPECT_NEAR(j["prior_value"].get<double>(), 0.0, 1e-12);
  EXPECT_LE(j["oracle"]["abs_diff"].get<double>(), 5e-3);
  EXPECT_FALSE(j["oracle"]["mismatch"].get<bool>());
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["seed"], 0);
}

TEST(Cli, MalformedInstanceReportsLine) {
  auto dir = scratch_dir("cli_bad");
  std::ofstream(dir / "bad.json") << "{\n  \"states\": [\"a\", \"b\"],\n  \"prior\": [0.5 0.5]\n}\n";
  auto log = (dir / "log.txt").string();
  EXPECT_EQ(run_cli("--out " + quoted(dir / "o") + " solve --instance " + quoted(dir / "bad.json"), log), 1);
  EXPECT_NE(read_file(log).find("bad.json:3:"), std::string::npos) << read_file(log);
  EXPECT_FALSE(fs::exists(dir / "o" / "solve.json"));
}

TEST(Cli, StubRunsAreBitReproducible) {
  for (const char* mode : {"static", "dynamic"}) {
    auto a = scratch_dir(std::string("cli_run_a_") + mode), b = scratch_dir(std::string("cli_run_b_") + mode);
    std::string args = std::string(" --stub --seed 7 run --mode ") + mode + " --claims " +
                       quoted(source_path("data/claims/sample_claims.jsonl"));
    ASSERT_EQ(run_cli("--out " + quoted(a) + args), 0) << mode;
    ASSERT_EQ(run_cli("--out " + quoted(b) + args), 0) << mode;
    auto ts = envs::read_transcripts(a / "transcripts");
    EXPECT_EQ(ts.size(), 4u);
    for (const auto& t : ts) EXPECT_TRUE(t.valid);
    EXPECT_EQ(std::system(("diff -r " + quoted(a) + " " + quoted(b) + " >/dev/null").c_str()), 0) << mode;
    EXPECT_EQ(read_json(a / "run_summary.json")["seed"], 7);
  }
}

TEST(Cli, DynamicRoundsFlag) {
  auto dir = scratch_dir("cli_rounds");
  ASSERT_EQ(run_cli("--out " + quoted(dir) + " --stub run --mode dynamic --rounds 3 --claims " +
                    quoted(source_path("data/claims/sample_claims.jsonl"))),
            0);
  for (const auto& t : envs::read_transcripts(dir / "transcripts")) EXPECT_EQ(t.turns.size(), 3u);
}

TEST(Cli, MissingApiKeyFailsBeforeWriting) {
  auto dir = scratch_dir("cli_nokey");
  json cfg = {{"endpoints", json::object()}};
  for (const char* role : {"sender", "receiver"}) {
    cfg["endpoints"][role] = {{"base_url", "http://127.0.0.1:9/v1"},
                              {"model_name", "m"},
                              {"api_key_env", "PERSUADE_TEST_SURELY_UNSET_KEY"}};
  }
  std::ofstream(dir / "cfg.json") << cfg.dump();
  ::unsetenv("PERSUADE_TEST_SURELY_UNSET_KEY");
  auto log = (dir / "log.txt").string();
  EXPECT_EQ(run_cli("--config " + quoted(dir / "cfg.json") + " --out " + quoted(dir / "o") +
                        " run --mode static --claims " + quoted(source_path("data/claims/sample_claims.jsonl")),
                    log),
            1);
  EXPECT_NE(read_file(log).find("PERSUADE_TEST_SURELY_UNSET_KEY"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, ConfigWithInlineSecretRejected) {
  auto dir = scratch_dir("cli_secret");
  json cfg = {{"endpoints",
               {{"sender", {{"base_url", "http://127.0.0.1:9/v1"}, {"model_name", "m"}, {"api_key", "sk-x"}}}}}};
  std::ofstream(dir / "cfg.json") << cfg.dump();
  auto log = (dir / "log.txt").string();
  EXPECT_EQ(run_cli("--config " + quoted(dir / "cfg.json") + " --out " + quoted(dir / "o") +
                        " run --mode static --claims " + quoted(source_path("data/claims/sample_claims.jsonl")),
                    log),
            1);
  EXPECT_NE(read_file(log).find("api_key_env"), std::string::npos);
}

TEST(Cli, MetricsOnFixtureMatchesExpected) {
  auto dir = scratch_dir("cli_metrics");
  ASSERT_EQ(run_cli("--out " + quoted(dir) + " metrics --transcripts " +
                    quoted(source_path("data/fixtures/metrics/transcripts")) + " --confidences " +
                    quoted(source_path("data/fixtures/metrics/confidences.jsonl"))),
            0);
  json got = read_json(dir / "gain_table.json")["table"];
  json want = read_json(source_path("data/fixtures/metrics/expected_gain_table.json"));
  ASSERT_EQ(got["cells"].size(), want["cells"].size());
  for (std::size_t i = 0; i < want["cells"].size(); ++i) {
    EXPECT_EQ(got["cells"][i]["count"], want["cells"][i]["count"]);
    if (want["cells"][i]["mean"].is_number()) {
      EXPECT_NEAR(got["cells"][i]["mean"].get<double>(), want["cells"][i]["mean"].get<double>(), 1e-12);
    }
  }
  for (const char* f : {"gain_table.md", "gain_table.csv", "similarity.json", "buckets.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
}

TEST(Cli, ExportToJsonlPath) {
  auto dir = scratch_dir("cli_export");
  auto out = dir / "r.jsonl";
  ASSERT_EQ(run_cli("--out " + quoted(out) + " export --transcripts " +
                    quoted(source_path("data/fixtures/metrics/transcripts"))),
            0);
  EXPECT_EQ(count_lines(out), 8u);
  json manifest = read_json(dir / "r.manifest.json");
  EXPECT_EQ(manifest["schema_version"], kSchemaVersion);
}

TEST(Cli, DynamicSimDelayedIsMartingale) {
  auto dir = scratch_dir("cli_dyn");
  ASSERT_EQ(run_cli("--out " + quoted(dir) + " --seed 3 dynamic-sim --policy delayed --runs 200 --initial-belief 0.3"),
            0);
  json j = read_json(dir / "dynamic_summary.json");
  ASSERT_EQ(j["policies"].size(), 1u);
  EXPECT_TRUE(j["policies"][0]["martingale_ok"].get<bool>());
  EXPECT_TRUE(j["policies"][0]["pin_ok"].get<bool>());
  EXPECT_EQ(j["seed"], 3);
}

TEST(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(run_cli("solve --no-such-flag"), 1); }

}  // namespace
}  // namespace persuade

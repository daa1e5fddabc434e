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

// persuade: command-line front end.
//
//   persuade [global flags] <subcommand> [flags]
//
// Exit codes: 0 success, 1 invalid input or configuration, 2 numeric
// failure or exhausted downstream service.

#include <atomic>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "persuade/persuade.hpp"

namespace fs = std::filesystem;
using namespace persuade;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

// ---- option state --------------------------------------------------------

struct Global {
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string config_path;
  bool stub = false;
  int concurrency = 4;
  std::string log_level = "info";
  json config = json::object();
};

// Flags beat the config file, which beats the defaults.
void apply_config(Global& g, const CLI::App& app) {
  if (g.config_path.empty()) return;
  g.config = parse_json(read_file(g.config_path), g.config_path);
  require(g.config.is_object(), ErrorCode::kInvalidConfig, g.config_path + ": expected an object");
  auto take = [&](const char* flag, const char* key, auto& target) {
    if (app.count(flag) == 0 && g.config.contains(key)) {
      try {
        g.config.at(key).get_to(target);
      } catch (const json::exception& e) {
        fail(ErrorCode::kInvalidConfig, g.config_path + ": \"" + key + "\": " + e.what());
      }
    }
  };
  take("--seed", "seed", g.seed);
  take("--out", "out", g.out);
  take("--concurrency", "concurrency", g.concurrency);
  take("--log-level", "log_level", g.log_level);
  if (app.count("--stub") == 0 && g.config.contains("stub")) g.stub = g.config["stub"].get<bool>();
  require(g.concurrency >= 1, ErrorCode::kInvalidConfig, "concurrency must be >= 1");
}

// Section of the config file for one subcommand, used to fill in flags the
// user did not pass.
template <typename T>
void from_section(const Global& g, const CLI::App& sub, const char* section, const char* flag,
                  const char* key, T& target) {
  if (sub.count(flag) != 0 || !g.config.contains(section)) return;
  const json& s = g.config.at(section);
  if (!s.contains(key)) return;
  try {
    s.at(key).get_to(target);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidConfig, std::string(section) + "." + key + ": " + e.what());
  }
}

std::shared_ptr<agents::ConcurrencyLimiter> g_limiter;

std::shared_ptr<agents::ChatBackend> chat_backend(const Global& g, const std::string& role) {
  if (g.stub) return std::make_shared<agents::StubBackend>(g.seed, "stub-" + role);
  const json* profiles = g.config.contains("endpoints") ? &g.config["endpoints"] : nullptr;
  require(profiles != nullptr && profiles->contains(role), ErrorCode::kInvalidConfig,
          "no endpoint profile \"" + role + "\" in the config file (or pass --stub)");
  auto cfg = agents::endpoint_config_from_json(profiles->at(role), "endpoints." + role);
  return std::make_shared<agents::HttpChatBackend>(cfg, g_limiter);
}

// ---- output helpers ------------------------------------------------------

std::string hash_inputs(const std::vector<fs::path>& inputs) {
  std::string all;
  for (const auto& p : inputs) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file()) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) all += f.filename().string() + '\0' + read_file(f) + '\0';
    } else {
      all += read_file(p) + '\0';
    }
  }
  return content_hash(all);
}

json provenance(const Global& g, const std::string& command, const std::vector<fs::path>& inputs) {
  json in = json::array();
  for (const auto& p : inputs) in.push_back(p.string());
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"seed", g.seed},
          {"inputs", in},
          {"input_hash", hash_inputs(inputs)},
          {"prompt_version", agents::kPromptVersion},
          {"stub", g.stub}};
}

void write_json(const fs::path& path, const json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
  spdlog::info("wrote {}", path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file_atomic(path, text);
  spdlog::info("wrote {}", path.string());
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNumericFailure:
    case ErrorCode::kInfeasibleInstance:
    case ErrorCode::kTransport:
    case ErrorCode::kRateLimited:
    case ErrorCode::kExhaustedRetries:
    case ErrorCode::kEmbedderFailure:
      return 2;
    default:
      return 1;
  }
}

json belief_json(const Belief& b) { return std::vector<double>(b.probs().begin(), b.probs().end()); }

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  bool oracle = false;
  std::size_t resolution = 400;
};

int cmd_solve(const Global& g, const SolveArgs& a) {
  PersuasionInstance inst = load_instance(a.instance);
  SolveResult res = solve_optimal(inst);
  VerifyReport rep = verify_scheme(inst, res.scheme);

  json posts = json::array();
  for (const auto& p : res.posteriors) {
    json names = json::array();
    for (auto s : p.signals) names.push_back(res.scheme.signals()[s]);
    posts.push_back({{"posterior", belief_json(p.posterior)}, {"probability", p.probability}, {"signals", names}});
  }
  json doc = provenance(g, "solve", {a.instance});
  doc["value"] = res.value;
  doc["prior_value"] = res.prior_value;
  doc["gain"] = res.gain;
  doc["scheme"] = {{"signals", res.scheme.signals()}, {"likelihoods", res.scheme.likelihoods().to_rows()}};
  doc["posteriors"] = posts;
  doc["verify"] = {{"plausible", rep.plausible},
                   {"plausibility_error", rep.plausibility_error},
                   {"obedient", rep.obedient},
                   {"achieved_value", rep.achieved_value}};
  doc["lp_pivots"] = res.lp_pivots;
  if (a.oracle) {
    double ov = brute_force_value(inst, a.resolution);
    double diff = std::abs(ov - res.value);
    doc["oracle"] = {{"resolution", a.resolution}, {"value", ov}, {"abs_diff", diff},
                     {"tolerance", 5e-3}, {"mismatch", diff > 5e-3}};
  }
  write_json(fs::path(g.out) / "solve.json", doc);
  std::cout << doc.dump(2) << "\n";
  return rep.ok() ? 0 : 2;
}

// ---- dynamic-sim ---------------------------------------------------------

struct DynamicArgs {
  dynamic::DynamicConfig cfg;
  std::string policy = "all";
  std::size_t runs = 10000;
  std::size_t trajectories = 0;
};

json trajectory_json(const dynamic::TrajectoryRecord& tr, std::size_t run, std::string_view policy) {
  json steps = json::array();
  for (const auto& s : tr.steps) {
    steps.push_back({{"t", s.time},
                     {"state", s.true_state},
                     {"prior_belief", s.prior_belief},
                     {"belief", s.belief},
                     {"signal", s.signal == dynamic::Signal::kDisclose ? "disclose" : "silence"},
                     {"action", s.action}});
  }
  return {{"run", run}, {"policy", policy}, {"sender_payoff", tr.sender_payoff}, {"steps", steps}};
}

int cmd_dynamic(const Global& g, DynamicArgs a) {
  a.cfg.seed = g.seed;
  a.cfg.validate();
  require(a.runs >= 1, ErrorCode::kInvalidConfig, "runs must be >= 1");
  std::vector<dynamic::Policy> policies;
  if (a.policy == "all") {
    policies = {dynamic::Policy::kNone, dynamic::Policy::kFull, dynamic::Policy::kDelayed};
  } else {
    policies = {dynamic::parse_policy(a.policy)};
  }

  // Closed-form drift check on the uninformative path.
  double drift_err = 0.0;
  {
    auto tr = dynamic::simulate_one(a.cfg, dynamic::Policy::kNone, 0);
    for (const auto& s : tr.steps) {
      double exact = 1.0 - (1.0 - a.cfg.initial_belief) * std::exp(-a.cfg.lambda * s.time);
      drift_err = std::max(drift_err, std::abs(exact - s.belief));
    }
  }

  json summaries = json::array();
  std::vector<dynamic::PolicySummary> sums;
  std::string jsonl;
  for (auto p : policies) {
    auto s = dynamic::summarize_policy(a.cfg, p, a.runs);
    sums.push_back(s);
    summaries.push_back({{"policy", dynamic::policy_name(p)},
                         {"runs", s.runs},
                         {"mean_payoff", s.mean_payoff},
                         {"stderr_payoff", s.stderr_payoff},
                         {"max_martingale_error", s.max_martingale_error},
                         {"martingale_ok", s.max_martingale_error <= 1e-9},
                         {"max_pin_error", s.max_pin_error},
                         {"pin_ok", s.max_pin_error <= 1e-9},
                         {"threshold_rule_holds", s.threshold_rule_holds},
                         {"absorbing_holds", s.absorbing_holds}});
    for (std::size_t r = 0; r < std::min(a.trajectories, a.runs); ++r) {
      jsonl += trajectory_json(dynamic::simulate_one(a.cfg, p, r), r, dynamic::policy_name(p)).dump() + "\n";
    }
  }
  json doc = provenance(g, "dynamic-sim", {});
  doc["config"] = {{"lambda", a.cfg.lambda}, {"p_star", a.cfg.p_star}, {"dt", a.cfg.dt},
                   {"horizon", a.cfg.horizon}, {"initial_belief", a.cfg.initial_belief}};
  doc["policies"] = summaries;
  doc["max_drift_error"] = drift_err;
  doc["drift_ok"] = drift_err <= 1e-9;
  if (sums.size() == 3) {
    const auto &none = sums[0], &full = sums[1], &del = sums[2];
    doc["delayed_vs_full_ok"] = del.mean_payoff >= full.mean_payoff - 2.0 * full.stderr_payoff;
    doc["delayed_vs_none_ok"] = del.mean_payoff >= none.mean_payoff - 2.0 * none.stderr_payoff;
  }
  write_json(fs::path(g.out) / "dynamic_summary.json", doc);
  if (!jsonl.empty()) write_text(fs::path(g.out) / "trajectories.jsonl", jsonl);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
  std::string claims;
  std::string mode = "static";
  std::optional<int> rounds;
  int word_limit = agents::kDefaultWordLimit;
};

void write_gain_outputs(const fs::path& dir, const metrics::GainTable& table, json prov) {
  prov["table"] = metrics::gain_table_to_json(table);
  write_json(dir / "gain_table.json", prov);
  write_text(dir / "gain_table.md", metrics::gain_table_markdown(table));
  write_text(dir / "gain_table.csv", metrics::gain_table_csv(table));
}

int cmd_run(const Global& g, const RunArgs& a) {
  auto claims = envs::load_claims(a.claims);
  auto mode = agents::parse_mode(a.mode);
  require(mode == agents::Mode::kDynamic || !a.rounds || *a.rounds == 1, ErrorCode::kInvalidConfig,
          "static mode runs exactly one round");
  auto config = envs::EpisodeConfig::for_mode(mode, a.rounds);
  config.word_limit = a.word_limit;
  config.seed = g.seed;
  config.record_timing = !g.stub;
  config.validate();

  // Backends are built (and API keys resolved) before any request goes out.
  auto sender_backend = chat_backend(g, "sender");
  auto receiver_backend = chat_backend(g, "receiver");
  agents::AgentOptions opts{a.word_limit, std::nullopt};
  agents::LlmSender sender(sender_backend, mode, opts);
  agents::LlmReceiver receiver(receiver_backend, opts);
  config.sender_label = sender.label();
  config.receiver_label = receiver.label();

  spdlog::info("running {} {} episode(s), {} round(s) each", claims.size(), a.mode, config.rounds);
  auto transcripts = envs::run_episodes(claims, config, sender, receiver, g.concurrency, &g_interrupted);

  fs::path out(g.out);
  envs::write_transcripts(out / "transcripts", transcripts);
  auto table = metrics::gain_table(transcripts);
  json prov = provenance(g, "run", {a.claims});
  write_gain_outputs(out, table, prov);

  std::size_t invalid = 0;
  for (const auto& t : transcripts) invalid += !t.valid;
  json summary = prov;
  summary["mode"] = a.mode;
  summary["rounds"] = config.rounds;
  summary["episodes"] = transcripts.size();
  summary["requested"] = claims.size();
  summary["invalid"] = invalid;
  summary["interrupted"] = g_interrupted.load();
  write_json(out / "run_summary.json", summary);
  if (invalid > 0) spdlog::warn("{} of {} episode(s) invalid", invalid, transcripts.size());
  return 0;
}

// ---- metrics -------------------------------------------------------------

struct MetricsArgs {
  std::string transcripts;
  std::string confidences;
  std::vector<double> thresholds;
  std::string embedder = "hashing";
  std::size_t dim = 256;
};

std::unordered_map<std::string, double> load_confidences(const fs::path& path) {
  std::unordered_map<std::string, double> out;
  auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (agents::trim(lines[i]).empty()) continue;
    std::string where = path.string() + ":" + std::to_string(i + 1);
    json j = parse_json(lines[i], where);
    try {
      out[j.at("id").get<std::string>()] = j.at("confidence").get<double>();
    } catch (const json::exception& e) {
      fail(ErrorCode::kParseError, where + ": " + e.what());
    }
  }
  return out;
}

int cmd_metrics(const Global& g, const MetricsArgs& a) {
  auto transcripts = envs::read_transcripts(a.transcripts);
  fs::path out(g.out);
  std::vector<fs::path> inputs = {a.transcripts};
  if (!a.confidences.empty()) inputs.emplace_back(a.confidences);
  json prov = provenance(g, "metrics", inputs);

  write_gain_outputs(out, metrics::gain_table(transcripts), prov);

  std::unique_ptr<metrics::Embedder> embedder;
  if (a.embedder == "hashing" || g.stub) {
    embedder = std::make_unique<metrics::HashingEmbedder>(a.dim);
  } else if (a.embedder == "remote") {
    require(g.config.contains("endpoints") && g.config["endpoints"].contains("embedder"),
            ErrorCode::kInvalidConfig, "no endpoint profile \"embedder\" in the config file");
    embedder = std::make_unique<metrics::RemoteEmbedder>(
        agents::endpoint_config_from_json(g.config["endpoints"]["embedder"], "endpoints.embedder"));
  } else {
    fail(ErrorCode::kInvalidConfig, "unknown embedder '" + a.embedder + "'");
  }
  auto sim = metrics::message_similarity(transcripts, *embedder);
  json sim_doc = prov;
  sim_doc["similarity"] = metrics::similarity_report_to_json(sim);
  write_json(out / "similarity.json", sim_doc);
  write_text(out / "similarity.csv", metrics::similarity_report_csv(sim));

  if (!a.confidences.empty()) {
    std::optional<std::pair<double, double>> th;
    if (!a.thresholds.empty()) {
      require(a.thresholds.size() == 2, ErrorCode::kInvalidConfig, "--thresholds takes two values");
      th = std::make_pair(a.thresholds[0], a.thresholds[1]);
    }
    auto rep = metrics::bucket_by_prior(transcripts, load_confidences(a.confidences), th);
    json b = prov;
    b["buckets"] = metrics::bucket_report_to_json(rep);
    write_json(out / "buckets.json", b);
    write_text(out / "buckets.csv", metrics::bucket_report_csv(rep));
  }
  return 0;
}

// ---- classify ------------------------------------------------------------

int cmd_classify(const Global& g, const std::string& dir) {
  auto transcripts = envs::read_transcripts(dir);
  auto backend = chat_backend(g, "classifier");
  auto tally = metrics::tally_strategies(*backend, transcripts);
  json doc = provenance(g, "classify", {dir});
  doc["strategies"] = metrics::strategy_tally_to_json(tally);
  write_json(fs::path(g.out) / "strategies.json", doc);
  if (!tally.failures.empty()) spdlog::warn("{} transcript(s) unclassifiable", tally.failures.size());
  return 0;
}

// ---- export --------------------------------------------------------------

int cmd_export(const Global& g, const std::string& dir) {
  auto transcripts = envs::read_transcripts(dir);
  // `--out x.jsonl` names the rollout file itself; otherwise --out is a directory.
  fs::path out(g.out);
  fs::path file = out.extension() == ".jsonl" ? out : out / "rollouts.jsonl";
  auto summary = envs::export_rollouts(transcripts, file);
  json doc = provenance(g, "export", {dir});
  doc["file"] = file.filename().string();
  doc["written"] = summary.written;
  doc["skipped"] = summary.skipped;
  fs::path manifest = file;
  manifest.replace_extension(".manifest.json");
  write_json(manifest, doc);
  spdlog::info("exported {} rollout(s), skipped {} invalid", summary.written, summary.skipped);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// ---- probe-prior ---------------------------------------------------------

int cmd_probe(const Global& g, const std::string& claims_path) {
  auto claims = envs::load_claims(claims_path);
  auto backend = chat_backend(g, "receiver");
  std::vector<json> rows;
  for (const auto& c : claims) {
    if (g_interrupted) break;
    rows.push_back({{"id", c.id}, {"dataset", c.dataset},
                    {"confidence", agents::probe_prior_confidence(*backend, c.claim)}});
  }
  fs::path out(g.out);
  write_text(out / "confidences.jsonl", to_jsonl(rows));
  json doc = provenance(g, "probe-prior", {claims_path});
  doc["file"] = "confidences.jsonl";
  doc["count"] = rows.size();
  doc["model"] = backend->name();
  write_json(out / "confidences.manifest.json", doc);
  return 0;
}

// ---- summarize-claims ----------------------------------------------------

int cmd_summarize(const Global& g, const std::string& posts_path) {
  auto posts = envs::load_posts(posts_path);
  auto backend = chat_backend(g, "summarizer");
  std::vector<json> rows;
  for (const auto& p : posts) {
    if (g_interrupted) break;
    envs::ClaimRecord c{p.id, p.dataset, envs::summarize_claim(*backend, p.claim)};
    rows.push_back(envs::claim_to_json(c));
  }
  fs::path out(g.out);
  write_text(out / "claims.jsonl", to_jsonl(rows));
  json doc = provenance(g, "summarize-claims", {posts_path});
  doc["file"] = "claims.jsonl";
  doc["count"] = rows.size();
  write_json(out / "claims.manifest.json", doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian persuasion solver and LLM persuasion benchmark"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "RNG seed recorded in every output");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--config", g.config_path, "JSON config file (endpoint profiles, defaults)")->check(CLI::ExistingFile);
  app.add_flag("--stub", g.stub, "replace every remote endpoint with a deterministic in-process stub");
  app.add_option("--concurrency", g.concurrency, "maximum concurrent episodes / requests");
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error, off");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "optimal signaling scheme for an instance file");
  s->add_option("--instance", solve.instance, "instance JSON")->required();
  s->add_flag("--oracle", solve.oracle, "also run the grid brute-force oracle");
  s->add_option("--resolution", solve.resolution, "oracle grid resolution");

  DynamicArgs dyn;
  auto* d = app.add_subcommand("dynamic-sim", "Monte Carlo simulation of the dynamic model");
  d->add_option("--lambda", dyn.cfg.lambda, "Poisson transition rate");
  d->add_option("--p-star", dyn.cfg.p_star, "receiver threshold");
  d->add_option("--dt", dyn.cfg.dt, "step size");
  d->add_option("--horizon", dyn.cfg.horizon, "time horizon");
  d->add_option("--initial-belief", dyn.cfg.initial_belief, "initial Pr(state = 1)");
  d->add_option("--policy", dyn.policy, "none, full, delayed or all");
  d->add_option("--runs", dyn.runs, "number of runs per policy");
  d->add_option("--trajectories", dyn.trajectories, "dump the first N runs per policy as JSONL");

  RunArgs run;
  auto* r = app.add_subcommand("run", "run benchmark episodes over a claims file");
  r->add_option("--claims", run.claims, "claims JSONL");
  r->add_option("--mode", run.mode, "static or dynamic");
  auto* rounds_opt = r->add_option("--rounds", "rounds per dynamic episode (default 3)");
  r->add_option("--word-limit", run.word_limit, "word limit substituted into the prompts");

  MetricsArgs met;
  auto* m = app.add_subcommand("metrics", "gain table, similarity and prior buckets");
  m->add_option("--transcripts", met.transcripts, "transcript directory");
  m->add_option("--confidences", met.confidences, "JSONL of {id, confidence}");
  m->add_option("--thresholds", met.thresholds, "two bucket thresholds (default: terciles)")->expected(2);
  m->add_option("--embedder", met.embedder, "hashing or remote");
  m->add_option("--dim", met.dim, "hashing embedder dimension");

  std::string classify_dir, export_dir, probe_claims, posts;
  auto* c = app.add_subcommand("classify", "top-3 strategy classification");
  c->add_option("--transcripts", classify_dir, "transcript directory");
  auto* e = app.add_subcommand("export", "reward-labelled rollouts for trainers");
  e->add_option("--transcripts", export_dir, "transcript directory");
  auto* p = app.add_subcommand("probe-prior", "prior confidence of the receiver model per claim");
  p->add_option("--claims", probe_claims, "claims JSONL");
  auto* sc = app.add_subcommand("summarize-claims", "one-sentence claims from raw posts");
  sc->add_option("--posts", posts, "posts JSONL {id, dataset, post}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 1;
  }

  auto logger = spdlog::stderr_color_mt("persuade");
  spdlog::set_default_logger(logger);
  std::signal(SIGINT, on_interrupt);

  try {
    apply_config(g, app);
    spdlog::set_level(spdlog::level::from_str(g.log_level));
    g_limiter = std::make_shared<agents::ConcurrencyLimiter>(g.concurrency);

    auto need = [](const std::string& v, const char* flag) {
      require(!v.empty(), ErrorCode::kInvalidConfig, std::string(flag) + " is required");
    };
    if (*s) return cmd_solve(g, solve);
    if (*d) {
      from_section(g, *d, "dynamic", "--lambda", "lambda", dyn.cfg.lambda);
      from_section(g, *d, "dynamic", "--p-star", "p_star", dyn.cfg.p_star);
      from_section(g, *d, "dynamic", "--dt", "dt", dyn.cfg.dt);
      from_section(g, *d, "dynamic", "--horizon", "horizon", dyn.cfg.horizon);
      from_section(g, *d, "dynamic", "--initial-belief", "initial_belief", dyn.cfg.initial_belief);
      from_section(g, *d, "dynamic", "--policy", "policy", dyn.policy);
      from_section(g, *d, "dynamic", "--runs", "runs", dyn.runs);
      return cmd_dynamic(g, dyn);
    }
    if (*r) {
      from_section(g, *r, "run", "--claims", "claims", run.claims);
      from_section(g, *r, "run", "--mode", "mode", run.mode);
      from_section(g, *r, "run", "--word-limit", "word_limit", run.word_limit);
      if (rounds_opt->count() > 0) {
        run.rounds = rounds_opt->as<int>();
      } else if (g.config.contains("run") && g.config["run"].contains("rounds")) {
        run.rounds = g.config["run"]["rounds"].get<int>();
      }
      need(run.claims, "--claims");
      return cmd_run(g, run);
    }
    if (*m) {
      from_section(g, *m, "metrics", "--embedder", "embedder", met.embedder);
      from_section(g, *m, "metrics", "--dim", "dim", met.dim);
      from_section(g, *m, "metrics", "--thresholds", "thresholds", met.thresholds);
      need(met.transcripts, "--transcripts");
      return cmd_metrics(g, met);
    }
    if (*c) {
      need(classify_dir, "--transcripts");
      return cmd_classify(g, classify_dir);
    }
    if (*e) {
      need(export_dir, "--transcripts");
      return cmd_export(g, export_dir);
    }
    if (*p) {
      need(probe_claims, "--claims");
      return cmd_probe(g, probe_claims);
    }
    if (*sc) {
      need(posts, "--posts");
      return cmd_summarize(g, posts);
    }
  } catch (const Error& err) {
    spdlog::error("{}", err.what());
    return exit_code_for(err);
  } catch (const std::exception& err) {
    spdlog::error("{}", err.what());
    return 1;
  }
  return 1;
}

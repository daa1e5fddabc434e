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

// OpenAI-style chat-completions and embeddings clients over cpp-httplib.
//
// Retries: transport failures, HTTP 429 and 5xx are retried with capped
// exponential backoff (Retry-After is honoured up to the cap). Other 4xx
// responses fail immediately. All requests through one ConcurrencyLimiter
// share its in-flight budget.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "persuade/agents/chat.hpp"
#include "persuade/error.hpp"

namespace persuade::agents {

struct LLMEndpointConfig {
  std::string base_url;     // e.g. http://localhost:8000/v1
  std::string model_name;
  std::string api_key_env;  // name of the environment variable holding the key
  double timeout_seconds = 120.0;
  int max_retries = 4;
  int max_concurrency = 4;
  double temperature = 0.7;
  bool logprobs_enabled = false;
  int backoff_initial_ms = 500;
  int backoff_max_ms = 16000;

  void validate() const {
    require(!base_url.empty(), ErrorCode::kInvalidConfig, "endpoint base_url is empty");
    require(!model_name.empty(), ErrorCode::kInvalidConfig, "endpoint model_name is empty");
    require(timeout_seconds > 0.0, ErrorCode::kInvalidConfig, "timeout must be > 0");
    require(max_retries >= 0, ErrorCode::kInvalidConfig, "max_retries must be >= 0");
    require(max_concurrency >= 1, ErrorCode::kInvalidConfig, "max_concurrency must be >= 1");
    require(backoff_initial_ms >= 0 && backoff_max_ms >= backoff_initial_ms,
            ErrorCode::kInvalidConfig, "invalid backoff settings");
  }

  // Reads the API key from the environment. Empty api_key_env means the
  // endpoint needs no key.
  std::string resolve_api_key() const {
    if (api_key_env.empty()) return {};
    const char* v = std::getenv(api_key_env.c_str());
    require(v != nullptr && *v != '\0', ErrorCode::kInvalidConfig,
            "environment variable " + api_key_env + " is not set");
    return v;
  }
};

// Reads an endpoint profile. Secrets are never accepted inline: the profile
// names the environment variable that holds the key.
inline LLMEndpointConfig endpoint_config_from_json(const nlohmann::json& j, const std::string& where) {
  require(j.is_object(), ErrorCode::kInvalidConfig, where + ": endpoint profile must be an object");
  for (const char* secret : {"api_key", "key", "token", "authorization"}) {
    require(!j.contains(secret), ErrorCode::kInvalidConfig,
            where + ": field \"" + secret + "\" is not allowed; set api_key_env instead");
  }
  LLMEndpointConfig c;
  try {
    c.base_url = j.value("base_url", c.base_url);
    c.model_name = j.value("model_name", c.model_name);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
    c.temperature = j.value("temperature", c.temperature);
    c.logprobs_enabled = j.value("logprobs_enabled", c.logprobs_enabled);
    c.backoff_initial_ms = j.value("backoff_initial_ms", c.backoff_initial_ms);
    c.backoff_max_ms = j.value("backoff_max_ms", c.backoff_max_ms);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidConfig, where + ": " + e.what());
  }
  try {
    c.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kInvalidConfig, where + ": " + e.what());
  }
  return c;
}

class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(int capacity) : capacity_(capacity) {
    require(capacity >= 1, ErrorCode::kInvalidConfig, "concurrency capacity must be >= 1");
  }

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < capacity_; });
    ++in_flight_;
    peak_ = std::max(peak_, in_flight_);
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

  int capacity() const { return capacity_; }
  int peak() const {
    std::lock_guard lock(mu_);
    return peak_;
  }

  class Slot {
   public:
    explicit Slot(ConcurrencyLimiter& l) : limiter_(l) { limiter_.acquire(); }
    ~Slot() { limiter_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    ConcurrencyLimiter& limiter_;
  };

 private:
  const int capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  int peak_ = 0;
};

struct HttpStats {
  std::atomic<long> attempts{0};
  std::atomic<long> retries{0};
  std::atomic<long> rate_limited{0};
};

namespace detail {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path_prefix;
};

inline ParsedUrl parse_base_url(const std::string& url) {
  auto scheme_end = url.find("://");
  require(scheme_end != std::string::npos, ErrorCode::kInvalidConfig,
          "base_url '" + url + "' lacks a scheme");
  std::string scheme = url.substr(0, scheme_end);
  require(scheme == "http" || scheme == "https", ErrorCode::kInvalidConfig,
          "unsupported scheme '" + scheme + "'");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  require(scheme == "http", ErrorCode::kInvalidConfig,
          "https endpoints need a build with OpenSSL support");
#endif
  auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.scheme_host_port = url.substr(0, path_start);
  if (path_start != std::string::npos) out.path_prefix = url.substr(path_start);
  while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
  return out;
}

}  // namespace detail

// JSON-over-HTTP POST with retries, shared by the chat and embedding clients.
class HttpJsonClient {
 public:
  HttpJsonClient(LLMEndpointConfig config, std::shared_ptr<ConcurrencyLimiter> limiter = nullptr)
      : config_(std::move(config)) {
    config_.validate();
    api_key_ = config_.resolve_api_key();
    url_ = detail::parse_base_url(config_.base_url);
    limiter_ = limiter ? std::move(limiter)
                       : std::make_shared<ConcurrencyLimiter>(config_.max_concurrency);
  }

  const LLMEndpointConfig& config() const { return config_; }
  const HttpStats& stats() const { return stats_; }
  ConcurrencyLimiter& limiter() { return *limiter_; }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    const std::string payload = body.dump();
    std::string last_error;
    ErrorCode last_code = ErrorCode::kTransport;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0) ++stats_.retries;
      ++stats_.attempts;
      std::optional<long> retry_after_ms;
      {
        ConcurrencyLimiter::Slot slot(*limiter_);
        httplib::Client cli(url_.scheme_host_port);
        auto secs = static_cast<time_t>(config_.timeout_seconds);
        auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
        cli.set_connection_timeout(secs, usecs);
        cli.set_read_timeout(secs, usecs);
        cli.set_write_timeout(secs, usecs);
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
        auto res = cli.Post(url_.path_prefix + path, headers, payload, "application/json");
        if (!res) {
          last_code = ErrorCode::kTransport;
          last_error = "transport error: " + httplib::to_string(res.error());
        } else if (res->status == 429) {
          ++stats_.rate_limited;
          last_code = ErrorCode::kRateLimited;
          last_error = "HTTP 429 rate limited";
          if (res->has_header("Retry-After")) {
            try {
              retry_after_ms = static_cast<long>(std::stod(res->get_header_value("Retry-After")) * 1000.0);
            } catch (const std::exception&) {
            }
          }
        } else if (res->status >= 500) {
          last_code = ErrorCode::kTransport;
          last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
        } else if (res->status >= 400) {
          fail(ErrorCode::kTransport,
               "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 500));
        } else {
          auto parsed = nlohmann::json::parse(res->body, nullptr, false);
          if (!parsed.is_discarded()) return parsed;
          last_code = ErrorCode::kTransport;
          last_error = "response body is not JSON";
        }
      }
      if (attempt < config_.max_retries) {
        long delay = std::min<long>(config_.backoff_max_ms,
                                    static_cast<long>(config_.backoff_initial_ms) << std::min(attempt, 20));
        if (retry_after_ms) delay = std::clamp(*retry_after_ms, delay, static_cast<long>(config_.backoff_max_ms));
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      }
    }
    fail(ErrorCode::kExhaustedRetries,
         std::to_string(config_.max_retries + 1) + " attempts failed; last: " +
             std::string(error_code_name(last_code)) + " " + last_error);
  }

 private:
  LLMEndpointConfig config_;
  std::string api_key_;
  detail::ParsedUrl url_;
  std::shared_ptr<ConcurrencyLimiter> limiter_;
  HttpStats stats_;
};

class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(LLMEndpointConfig config,
                           std::shared_ptr<ConcurrencyLimiter> limiter = nullptr)
      : client_(std::move(config), std::move(limiter)) {}

  Completion complete(const ChatRequest& request) override {
    const auto& cfg = client_.config();
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages) {
      messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    }
    nlohmann::json body = {{"model", cfg.model_name},
                           {"messages", messages},
                           {"temperature", request.temperature.value_or(cfg.temperature)}};
    if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
    if (request.logprobs) {
      require(cfg.logprobs_enabled, ErrorCode::kLogprobsUnsupported,
              "endpoint '" + cfg.model_name + "' is not configured for logprobs");
      body["logprobs"] = true;
      body["top_logprobs"] = std::max(1, request.top_logprobs);
    }
    nlohmann::json res = client_.post("/chat/completions", body);
    return parse_chat_response(res);
  }

  std::string name() const override { return client_.config().model_name; }
  const HttpStats& stats() const { return client_.stats(); }
  const LLMEndpointConfig& config() const { return client_.config(); }

  static Completion parse_chat_response(const nlohmann::json& res) {
    try {
      const auto& choice = res.at("choices").at(0);
      Completion out;
      const auto& content = choice.at("message").at("content");
      out.text = content.is_null() ? std::string() : content.get<std::string>();
      auto lp = choice.find("logprobs");
      if (lp != choice.end() && lp->is_object() && lp->contains("content") &&
          (*lp)["content"].is_array() && !(*lp)["content"].empty()) {
        const auto& first = (*lp)["content"][0];
        std::vector<TokenLogprob> alts;
        if (first.contains("top_logprobs") && first["top_logprobs"].is_array()) {
          for (const auto& t : first["top_logprobs"]) {
            alts.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
          }
        }
        if (alts.empty()) {
          alts.push_back({first.at("token").get<std::string>(), first.at("logprob").get<double>()});
        }
        out.first_token_logprobs = std::move(alts);
      }
      return out;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kTransport, std::string("malformed chat completion response: ") + e.what());
    }
  }

 private:
  HttpJsonClient client_;
};

class HttpEmbeddingClient {
 public:
  explicit HttpEmbeddingClient(LLMEndpointConfig config,
                               std::shared_ptr<ConcurrencyLimiter> limiter = nullptr)
      : client_(std::move(config), std::move(limiter)) {}

  std::vector<double> embed(const std::string& text) {
    nlohmann::json res =
        client_.post("/embeddings", {{"model", client_.config().model_name}, {"input", text}});
    try {
      return res.at("data").at(0).at("embedding").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kEmbedderFailure, std::string("malformed embedding response: ") + e.what());
    }
  }

  std::string name() const { return client_.config().model_name; }

 private:
  HttpJsonClient client_;
};

}  // namespace persuade::agents

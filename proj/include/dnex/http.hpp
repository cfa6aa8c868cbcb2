#pragma once

// HTTP plumbing: an OpenAI-style chat completion client and a small
// rate-limited, retrying GET helper used by the bibliographic clients.

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <cstdlib>
#include <memory>
#include <string>

#include "error.hpp"
#include "llm_probe.hpp"
#include "rate_limit.hpp"

namespace dnex {

/// Counts every request that actually leaves the process.
struct NetworkCounter {
  std::atomic<std::size_t> requests{0};
};

/// POSTs {"model", "messages": [user prompt]} and reads
/// choices[0].message.content. No sampling parameters are sent, so the
/// provider defaults apply. Browsing/tool options are never set.
class HttpCompletionClient final : public CompletionClient {
 public:
  HttpCompletionClient(ModelEndpoint endpoint, std::shared_ptr<TokenBucket> limiter = nullptr,
                       NetworkCounter* counter = nullptr)
      : endpoint_(std::move(endpoint)), limiter_(std::move(limiter)), counter_(counter) {}

  std::string model_id() const override { return endpoint_.model_id; }

  std::string complete(const std::string& prompt) override {
    nlohmann::json body = {{"model", endpoint_.model_id},
                           {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
    httplib::Headers headers;
    if (!endpoint_.api_key_env.empty()) {
      if (const char* key = std::getenv(endpoint_.api_key_env.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    httplib::Client cli(endpoint_.base_url);
    cli.set_connection_timeout(endpoint_.timeout);
    cli.set_read_timeout(endpoint_.timeout);
    if (limiter_) limiter_->acquire();
    if (counter_) ++counter_->requests;
    auto res = cli.Post(endpoint_.path, headers, body.dump(), "application/json");
    if (!res) throw TransportFailure("request to " + endpoint_.base_url + " failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
      throw TransportFailure("HTTP " + std::to_string(res->status) + " from " + endpoint_.base_url);
    if (res->status != 200)
      throw Error(ErrorCode::TransportError, "HTTP " + std::to_string(res->status) + " from " + endpoint_.base_url +
                                                 ": " + res->body.substr(0, 200));
    try {
      const auto j = nlohmann::json::parse(res->body);
      const auto& content = j.at("choices").at(0).at("message").at("content");
      return content.is_null() ? std::string() : content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::TransportError, std::string("malformed completion reply: ") + e.what());
    }
  }

 private:
  ModelEndpoint endpoint_;
  std::shared_ptr<TokenBucket> limiter_;
  NetworkCounter* counter_;
};

struct HttpGetOptions {
  std::string user_agent = "dnex/1.0";
  std::chrono::seconds timeout{30};
  RetryPolicy retry;
  SleepFn sleep = real_sleep;
};

/// GET with token-bucket pacing; 429/5xx and connection failures are
/// retried with backoff, other non-200 replies are returned as-is.
class RateLimitedGetter {
 public:
  RateLimitedGetter(std::string base_url, std::shared_ptr<TokenBucket> limiter, HttpGetOptions opts = {},
                    NetworkCounter* counter = nullptr)
      : base_url_(std::move(base_url)), limiter_(std::move(limiter)), opts_(std::move(opts)), counter_(counter) {}

  struct Reply {
    int status = 0;
    std::string body;
  };

  Reply get(const std::string& path_and_query) {
    std::string last;
    for (int attempt = 0; attempt <= opts_.retry.max_retries; ++attempt) {
      if (attempt > 0) opts_.sleep(opts_.retry.delay_for(attempt));
      httplib::Client cli(base_url_);
      cli.set_connection_timeout(opts_.timeout);
      cli.set_read_timeout(opts_.timeout);
      if (limiter_) limiter_->acquire();
      if (counter_) ++counter_->requests;
      auto res = cli.Get(path_and_query, httplib::Headers{{"User-Agent", opts_.user_agent}});
      if (!res) {
        last = httplib::to_string(res.error());
        continue;
      }
      if (res->status == 429) {
        last = "HTTP 429";
        continue;
      }
      if (res->status >= 500) {
        last = "HTTP " + std::to_string(res->status);
        continue;
      }
      return {res->status, res->body};
    }
    if (last == "HTTP 429") throw Error(ErrorCode::RateLimited, base_url_ + path_and_query + " kept returning 429");
    throw Error(ErrorCode::TransportError, base_url_ + path_and_query + ": " + last);
  }

 private:
  std::string base_url_;
  std::shared_ptr<TokenBucket> limiter_;
  HttpGetOptions opts_;
  NetworkCounter* counter_;
};

}  // namespace dnex

#pragma once

#include <memory>
#include <string>

#include "clock.hpp"
#include "file_store.hpp"
#include "http_transport.hpp"
#include "rate_limiter.hpp"

namespace refaudit {

enum class CachePolicy { prefer_cache, refresh, offline_only };

const char* cache_policy_name(CachePolicy policy);

struct FetchOptions {
    std::string user_agent;
    int max_retries = 3;                  // retries after the first attempt
    double initial_backoff_seconds = 1.0; // doubled on each retry
};

struct Fetched {
    int status = 200;
    std::string body;
    std::string fetched_at;
    bool from_cache = false;
};

// Cache-aware HTTP GET shared by the registry and publisher harvesters.
// Successful (200) bodies are persisted under `key` before the caller sees
// them; 429/5xx and connection failures are retried with exponential
// backoff; other statuses are returned for the caller to interpret.
class Fetcher {
  public:
    Fetcher(FetchOptions options, std::shared_ptr<HttpTransport> transport,
            std::shared_ptr<RateLimiter> limiter, std::shared_ptr<Clock> clock);

    // Throws Error(cache_miss) when policy is offline_only and `store` has
    // no snapshot for `key`; Error(transport) when retries are exhausted.
    Fetched fetch(const std::string& url, const std::string& key, FileStore& store,
                  CachePolicy policy);

    const FetchOptions& options() const { return options_; }
    Clock& clock() { return *clock_; }

  private:
    FetchOptions options_;
    std::shared_ptr<HttpTransport> transport_;
    std::shared_ptr<RateLimiter> limiter_;
    std::shared_ptr<Clock> clock_;
};

} // namespace refaudit

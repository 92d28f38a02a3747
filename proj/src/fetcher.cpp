#include "fetcher.hpp"

#include "errors.hpp"

namespace refaudit {

const char* cache_policy_name(CachePolicy policy) {
    switch (policy) {
        case CachePolicy::prefer_cache: return "prefer_cache";
        case CachePolicy::refresh: return "refresh";
        case CachePolicy::offline_only: return "offline_only";
    }
    return "?";
}

Fetcher::Fetcher(FetchOptions options, std::shared_ptr<HttpTransport> transport,
                 std::shared_ptr<RateLimiter> limiter, std::shared_ptr<Clock> clock)
    : options_(std::move(options)), transport_(std::move(transport)),
      limiter_(std::move(limiter)), clock_(std::move(clock)) {}

Fetched Fetcher::fetch(const std::string& url, const std::string& key, FileStore& store,
                       CachePolicy policy) {
    if (policy != CachePolicy::refresh) {
        if (auto body = store.read(key)) {
            Fetched out;
            out.body = std::move(*body);
            out.fetched_at = store.fetched_at(key).value_or("");
            out.from_cache = true;
            return out;
        }
        if (policy == CachePolicy::offline_only)
            raise(errc::cache_miss, "offline run and no cached snapshot for " + key);
    }

    HttpHeaders headers;
    if (!options_.user_agent.empty()) headers.emplace_back("User-Agent", options_.user_agent);

    std::string last_failure;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0)
            clock_->sleep_for(options_.initial_backoff_seconds * double(1 << (attempt - 1)));
        limiter_->acquire();
        HttpResponse res;
        try {
            res = transport_->get(url, headers);
        } catch (const Error& e) {
            if (e.code() != errc::transport) throw;
            last_failure = e.what();
            continue;
        }
        if (res.status == 429 || res.status >= 500) {
            last_failure = "status " + std::to_string(res.status) + " from " + url;
            continue;
        }
        Fetched out;
        out.status = res.status;
        out.body = std::move(res.body);
        out.fetched_at = clock_->wall_iso8601();
        if (res.status == 200) store.write(key, out.body, out.fetched_at);
        return out;
    }
    raise(errc::transport, "giving up on " + url + " after " +
                               std::to_string(options_.max_retries + 1) +
                               " attempts: " + last_failure);
}

} // namespace refaudit

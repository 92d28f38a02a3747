#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace refaudit {

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

class HttpTransport {
  public:
    virtual ~HttpTransport() = default;
    // Throws Error(transport) on connection-level failure.
    virtual HttpResponse get(const std::string& url, const HttpHeaders& headers) = 0;
};

// Live transport backed by cpp-httplib; follows redirects.
std::unique_ptr<HttpTransport> make_httplib_transport(double timeout_seconds = 30.0);

// Canned transport for tests and offline replays: responds from a URL map
// and records every request it sees.
class FakeTransport : public HttpTransport {
  public:
    void add(const std::string& url, int status, std::string body) {
        std::lock_guard lock(mutex_);
        canned_[url] = HttpResponse{status, std::move(body)};
    }

    // Queues a one-shot response consumed before the canned map; used to
    // script retry sequences.
    void push_transient(const std::string& url, int status, std::string body) {
        std::lock_guard lock(mutex_);
        transient_[url].push_back(HttpResponse{status, std::move(body)});
    }

    HttpResponse get(const std::string& url, const HttpHeaders& headers) override;

    std::vector<std::string> requests() const {
        std::lock_guard lock(mutex_);
        return requests_;
    }
    std::size_t request_count() const {
        std::lock_guard lock(mutex_);
        return requests_.size();
    }
    std::vector<HttpHeaders> request_headers() const {
        std::lock_guard lock(mutex_);
        return headers_;
    }

  private:
    mutable std::mutex mutex_;
    std::map<std::string, HttpResponse> canned_;
    std::map<std::string, std::vector<HttpResponse>> transient_;
    std::vector<std::string> requests_;
    std::vector<HttpHeaders> headers_;
};

} // namespace refaudit

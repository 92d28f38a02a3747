#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "http_transport.hpp"

#include "errors.hpp"

namespace refaudit {

namespace {

// Splits an absolute URL into scheme://host[:port] and the path+query part
// that httplib expects separately.
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        raise(errc::transport, "unsupported url: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
  public:
    explicit HttplibTransport(double timeout_seconds) : timeout_seconds_(timeout_seconds) {}

    HttpResponse get(const std::string& url, const HttpHeaders& headers) override {
        auto [origin, path] = split_url(url);
        httplib::Client client(origin);
        client.set_follow_location(true);
        auto secs = std::chrono::duration<double>(timeout_seconds_);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(secs));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(secs));
        httplib::Headers hl;
        for (const auto& [k, v] : headers) hl.emplace(k, v);
        auto res = client.Get(path, hl);
        if (!res)
            raise(errc::transport,
                  "request failed for " + url + ": " + httplib::to_string(res.error()));
        return HttpResponse{res->status, res->body};
    }

  private:
    double timeout_seconds_;
};

} // namespace

std::unique_ptr<HttpTransport> make_httplib_transport(double timeout_seconds) {
    return std::make_unique<HttplibTransport>(timeout_seconds);
}

HttpResponse FakeTransport::get(const std::string& url, const HttpHeaders& headers) {
    std::lock_guard lock(mutex_);
    requests_.push_back(url);
    headers_.push_back(headers);
    if (auto it = transient_.find(url); it != transient_.end() && !it->second.empty()) {
        HttpResponse r = it->second.front();
        it->second.erase(it->second.begin());
        return r;
    }
    if (auto it = canned_.find(url); it != canned_.end()) return it->second;
    raise(errc::transport, "no canned response for " + url);
}

} // namespace refaudit

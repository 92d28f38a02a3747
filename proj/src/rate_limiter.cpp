#include "rate_limiter.hpp"

#include <algorithm>

#include "errors.hpp"

namespace refaudit {

RateLimiter::RateLimiter(double requests_per_second, std::shared_ptr<Clock> clock)
    : interval_(0.0), clock_(std::move(clock)), next_free_(0.0) {
    if (!(requests_per_second > 0.0))
        raise(errc::invalid_argument, "rate limit must be positive");
    interval_ = 1.0 / requests_per_second;
}

double RateLimiter::acquire() {
    // The lock is held across the wait: admissions are strictly ordered
    // and consecutive admission times differ by at least `interval_`.
    std::lock_guard lock(mutex_);
    double now = clock_->now();
    if (first_) {
        first_ = false;
        next_free_ = now;
    }
    if (now < next_free_) {
        clock_->sleep_for(next_free_ - now);
        now = std::max(clock_->now(), next_free_);
    }
    next_free_ = now + interval_;
    return now;
}

} // namespace refaudit

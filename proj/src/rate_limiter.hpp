#pragma once

#include <memory>
#include <mutex>

#include "clock.hpp"

namespace refaudit {

// Serializes request admission so that any sliding window of
// 1/requests_per_second seconds contains at most one admission. Shared by
// all fetch workers.
class RateLimiter {
  public:
    RateLimiter(double requests_per_second, std::shared_ptr<Clock> clock);

    // Blocks until a slot is available; returns the admission time on the
    // clock's scale.
    double acquire();

    double interval() const { return interval_; }

  private:
    double interval_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    double next_free_;
    bool first_ = true;
};

} // namespace refaudit

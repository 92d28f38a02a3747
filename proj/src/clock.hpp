#pragma once

#include <memory>
#include <mutex>
#include <string>

namespace refaudit {

// Injectable time source. `now()` is seconds on an arbitrary monotonic
// scale; `wall_iso8601()` is the timestamp written into reports.
class Clock {
  public:
    virtual ~Clock() = default;
    virtual double now() = 0;
    virtual void sleep_for(double seconds) = 0;
    virtual std::string wall_iso8601() = 0;
};

class SystemClock : public Clock {
  public:
    double now() override;
    void sleep_for(double seconds) override;
    std::string wall_iso8601() override;
};

// Deterministic clock: sleep advances time instead of blocking. Safe for
// concurrent use.
class MockClock : public Clock {
  public:
    explicit MockClock(double start = 0.0, std::string wall = "1970-01-01T00:00:00Z")
        : now_(start), wall_(std::move(wall)) {}

    double now() override {
        std::lock_guard lock(mutex_);
        return now_;
    }

    void sleep_for(double seconds) override {
        std::lock_guard lock(mutex_);
        if (seconds > 0) now_ += seconds;
    }

    std::string wall_iso8601() override { return wall_; }

  private:
    std::mutex mutex_;
    double now_;
    std::string wall_;
};

// Wraps another clock but reports a pinned wall time; used for
// reproducible report output.
class FixedWallClock : public Clock {
  public:
    FixedWallClock(std::shared_ptr<Clock> inner, std::string wall)
        : inner_(std::move(inner)), wall_(std::move(wall)) {}

    double now() override { return inner_->now(); }
    void sleep_for(double seconds) override { inner_->sleep_for(seconds); }
    std::string wall_iso8601() override { return wall_; }

  private:
    std::shared_ptr<Clock> inner_;
    std::string wall_;
};

} // namespace refaudit

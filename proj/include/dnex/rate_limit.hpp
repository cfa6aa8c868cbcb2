#pragma once

// Token-bucket rate limiting and capped exponential backoff for outbound
// requests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>

namespace dnex {

/// Thread-safe token bucket. acquire() blocks until a token is available,
/// so the long-run request rate never exceeds rate_per_sec and at most
/// `burst` requests go out back to back.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  explicit TokenBucket(double rate_per_sec, double burst = 1.0)
      : rate_(rate_per_sec), burst_(std::max(1.0, burst)), tokens_(burst_), last_(Clock::now()) {}

  void acquire() {
    if (rate_ <= 0.0) return;  // unlimited
    std::unique_lock lock(mutex_);
    for (;;) {
      refill(Clock::now());
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration_cast<Clock::duration>(wait) + std::chrono::microseconds(50));
      lock.lock();
    }
  }

  double rate() const noexcept { return rate_; }

 private:
  void refill(Clock::time_point now) {
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
    last_ = now;
  }

  double rate_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mutex_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{500};
  std::chrono::milliseconds max_delay{30000};
  double multiplier = 2.0;

  /// Delay before retry number `attempt` (1-based).
  std::chrono::milliseconds delay_for(int attempt) const {
    double d = static_cast<double>(initial_delay.count());
    for (int i = 1; i < attempt; ++i) d *= multiplier;
    d = std::min(d, static_cast<double>(max_delay.count()));
    return std::chrono::milliseconds(static_cast<std::int64_t>(d));
  }
};

/// Sleep hook so tests can observe backoff without waiting.
using SleepFn = std::function<void(std::chrono::milliseconds)>;

inline void real_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

}  // namespace dnex

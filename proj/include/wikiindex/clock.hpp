#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace wikiindex {

using Timestamp = std::chrono::system_clock::time_point;

// Time source used by the rate limiter, retry backoff and report stamps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() = 0;
  virtual void sleep_for(std::chrono::nanoseconds d) = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() override;
  void sleep_for(std::chrono::nanoseconds d) override;
};

// Clock that only moves when told to; sleeping advances it instantly.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start = Timestamp{}) : now_(start) {}

  Timestamp now() override { return now_; }
  void sleep_for(std::chrono::nanoseconds d) override { now_ += std::chrono::duration_cast<Timestamp::duration>(d); }
  void advance(std::chrono::nanoseconds d) { sleep_for(d); }

 private:
  Timestamp now_;
};

std::int64_t to_unix_seconds(Timestamp t);
Timestamp from_unix_seconds(std::int64_t s);

// ISO-8601 UTC, second precision ("2016-05-01T12:00:00Z").
std::string format_iso8601(Timestamp t);

}  // namespace wikiindex

#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "sdsn/core/time.hpp"

namespace sdsn::sim {

struct EngineState {
  SimTime now;
  std::uint64_t processed = 0;  // events processed by this call
  std::size_t pending = 0;
};

/// Discrete-event scheduler. Events pop in (time, insertion sequence) order,
/// so equal-time events run in the order they were scheduled.
class Engine {
public:
  using Callback = std::function<void()>;
  using TraceHook = std::function<void(SimTime, std::uint64_t seq)>;

  SimTime now() const { return now_; }
  std::uint64_t total_processed() const { return total_processed_; }
  std::size_t pending() const { return queue_.size(); }

  /// Schedules at an absolute time; throws std::logic_error if `at` < now().
  void schedule(SimTime at, Callback cb);
  void schedule_in(SimTime delay, Callback cb) { schedule(now_ + delay, std::move(cb)); }

  /// Processes every event with timestamp <= t, then sets the clock to t.
  EngineState run_until(SimTime t);

  void set_trace(TraceHook hook) { trace_ = std::move(hook); }

private:
  struct Event {
    SimTime at;
    std::uint64_t seq;
    Callback cb;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t total_processed_ = 0;
  TraceHook trace_;
};

}  // namespace sdsn::sim

#include "sdsn/sim/engine.hpp"

#include <stdexcept>
#include <string>

namespace sdsn::sim {

void Engine::schedule(SimTime at, Callback cb) {
  if (at < now_)
    throw std::logic_error("event scheduled in the past: " + std::to_string(at.ns()) + " < " +
                           std::to_string(now_.ns()));
  queue_.push(Event{at, next_seq_++, std::move(cb)});
}

EngineState Engine::run_until(SimTime t) {
  if (t < now_) throw std::logic_error("run_until target precedes the clock");
  EngineState st;
  while (!queue_.empty() && queue_.top().at <= t) {
    // priority_queue::top is const; move the callback out before popping.
    Event ev = std::move(const_cast<Event&>(queue_.top()));
    queue_.pop();
    now_ = ev.at;
    if (trace_) trace_(ev.at, ev.seq);
    ev.cb();
    ++st.processed;
    ++total_processed_;
  }
  now_ = t;
  st.now = now_;
  st.pending = queue_.size();
  return st;
}

}  // namespace sdsn::sim

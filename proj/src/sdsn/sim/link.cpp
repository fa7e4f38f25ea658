#include "sdsn/sim/link.hpp"

#include <algorithm>
#include <cmath>

namespace sdsn::sim {

LinkQueue::LinkQueue(LinkParams params) : params_(params), service_ns_(1e9 / params.capacity_pps) {}

std::size_t LinkQueue::occupancy(SimTime t) {
  const double now = static_cast<double>(t.ns());
  while (!departures_ns_.empty() && departures_ns_.front() <= now) departures_ns_.pop_front();
  return departures_ns_.size();
}

EnqueueResult LinkQueue::enqueue(SimTime t) {
  ++counters_.enqueued;
  if (occupancy(t) >= params_.queue_capacity) {
    ++counters_.dropped;
    return Dropped{};
  }
  const double start = std::max(static_cast<double>(t.ns()), busy_until_ns_);
  busy_until_ns_ = start + service_ns_;
  departures_ns_.push_back(busy_until_ns_);
  const auto leave = static_cast<std::int64_t>(std::llround(busy_until_ns_));
  return Delivered{SimTime::from_ns(leave) + params_.propagation_delay};
}

}  // namespace sdsn::sim

#pragma once

#include <cstdint>
#include <deque>
#include <variant>

#include "sdsn/core/time.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::sim {

struct Delivered {
  SimTime at;
};
struct Dropped {};
using EnqueueResult = std::variant<Delivered, Dropped>;

struct LinkCounters {
  std::uint64_t enqueued = 0;  // every offered packet, accepted or not
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;

  std::uint64_t in_flight() const { return enqueued - delivered - dropped; }
};

/// One direction of a link: a finite FIFO served at a fixed packet rate
/// followed by a propagation delay.
class LinkQueue {
public:
  explicit LinkQueue(LinkParams params);

  /// Offers a packet at time t. Accepted packets leave the queue after
  /// waiting for everything ahead of them plus their own 1/capacity service
  /// time, and arrive propagation_delay later.
  EnqueueResult enqueue(SimTime t);
  /// Called by the owner when an accepted packet reaches the far end.
  void mark_delivered() { ++counters_.delivered; }

  /// Packets queued or in service at time t.
  std::size_t occupancy(SimTime t);
  const LinkCounters& counters() const { return counters_; }
  const LinkParams& params() const { return params_; }

private:
  LinkParams params_;
  double service_ns_;
  double busy_until_ns_ = 0.0;
  std::deque<double> departures_ns_;
  LinkCounters counters_;
};

}  // namespace sdsn::sim

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sdsn/core/time.hpp"

namespace sdsn::sim {

struct RttSample {
  SimTime sent_at;
  std::optional<SimTime> rtt;  // nullopt: timed out

  bool timed_out() const { return !rtt.has_value(); }
};

/// Ping outcomes in send order.
struct RttSeries {
  std::vector<RttSample> probes;

  std::size_t timeouts() const;
  /// Longest run of consecutive timeouts among probes sent in [from, to).
  std::size_t max_consecutive_timeouts(SimTime from, SimTime to) const;

  /// Header `t_sent_us,rtt_us_or_TIMEOUT`, one row per probe.
  std::string to_csv() const;
  static RttSeries from_csv(const std::string& text, const std::string& source = "rtt.csv");
};

}  // namespace sdsn::sim

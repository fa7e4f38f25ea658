#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sdsn/control/controller.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::monitor {

using control::FlowKey;
using control::FlowStatsRecord;

inline constexpr std::size_t kFeatureCount = 6;

/// Per-flow window features. Column order matches the dataset CSV.
struct FeatureVector {
  double pckt_rate = 0.0;       // packets/s over the window
  double byte_rate = 0.0;       // bytes/s over the window
  double mean_pckt_size = 0.0;  // bytes per packet in the window
  double flow_duration = 0.0;   // seconds since the entry was installed
  double src_fanout = 0.0;      // distinct eth_dst reached by this eth_src
  double dst_fanin = 0.0;       // distinct eth_src reaching this eth_dst

  std::array<double, kFeatureCount> to_array() const {
    return {pckt_rate, byte_rate, mean_pckt_size, flow_duration, src_fanout, dst_fanin};
  }
  static FeatureVector from_array(std::span<const double> v);
  bool operator==(const FeatureVector&) const = default;
};

/// Every live entry of every switch, switch by switch, stamped with t.
std::vector<FlowStatsRecord> poll_cycle(const control::Controller& controller, SimTime t);

/// Rate features from consecutive polls of one entry. Throws
/// std::invalid_argument for fewer than two polls; returns nullopt when the
/// entry was recycled inside the window (counters went backwards).
std::optional<FeatureVector> featurize(std::span<const FlowStatsRecord> window, double src_fanout,
                                       double dst_fanin);

struct FlowVector {
  FlowKey key;
  SimTime at;
  FeatureVector features;
};

struct MonitorParams {
  std::size_t window_polls = 3;
};

/// Keeps a sliding window of polls per flow and emits one vector per flow
/// per poll once its window spans at least two polls. Each flow is observed
/// at its ingress switch, the switch its source is attached to.
class Monitor {
public:
  Monitor(const sim::Topology& topology, MonitorParams params = {});

  std::vector<FlowVector> ingest(const std::vector<FlowStatsRecord>& records, SimTime t);
  const MonitorParams& params() const { return params_; }

private:
  const sim::Topology* topology_;
  MonitorParams params_;
  std::map<FlowKey, std::deque<FlowStatsRecord>> history_;
};

}  // namespace sdsn::monitor

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdsn/core/rng.hpp"
#include "sdsn/core/time.hpp"
#include "sdsn/sim/packet.hpp"
#include "sdsn/sim/topology.hpp"
#include "sdsn/traffic/profile.hpp"

namespace sdsn::sim {
class Network;
}

namespace sdsn::traffic {

using sim::FlowId;
using sim::NodeId;

struct PacketEvent {
  SimTime at;
  NodeId src = sim::kNoNode;
  NodeId dst = sim::kNoNode;
  std::uint32_t payload = 0;
  FlowId flow = sim::kNoFlow;

  bool operator==(const PacketEvent&) const = default;
};

/// Constant-gap UDP source. The rate is drawn once, uniformly from the
/// profile's speed class; each payload is drawn uniformly from its payload
/// class. Packet k leaves at start + floor(k * 1e9 / rate) ns.
class FlowGenerator {
public:
  FlowGenerator(const TrafficProfile& profile, SimTime start, SimTime stop);

  std::int64_t rate_pps() const { return rate_; }
  /// Next (time, payload), or nullopt once the send time reaches stop.
  std::optional<std::pair<SimTime, std::uint32_t>> next();

private:
  TrafficProfile profile_;
  Rng rng_;
  SimTime start_;
  SimTime stop_;
  std::int64_t rate_;
  std::uint64_t index_ = 0;
};

/// Materialized schedule of one flow; throws std::invalid_argument when
/// duration <= 0.
std::vector<PacketEvent> sample_flow(const TrafficProfile& profile, NodeId src, NodeId dst, SimTime duration,
                                     FlowId flow = 0, SimTime start = {});

/// A scripted flow with its ground-truth label (1 = attack).
struct FlowSpec {
  FlowId id = sim::kNoFlow;
  NodeId src = sim::kNoNode;
  NodeId dst = sim::kNoNode;
  TrafficProfile profile;
  SimTime start;
  SimTime stop;
  int label = 0;
};

struct AttackScenario {
  NodeId target = sim::kNoNode;
  std::vector<NodeId> bot_sources;
  TrafficProfile profile;
  SimTime start;
  SimTime stop;
};

/// One label-1 flow per bot toward the target; bot i uses seed
/// mix_seed(profile.seed, i). Validates ids, reachability and the window.
std::vector<FlowSpec> attack_flows(const AttackScenario& scenario, const sim::Topology& topology, FlowId first_id);

/// Every attack packet, merged in (time, flow) order.
std::vector<PacketEvent> build_attack(const AttackScenario& scenario, const sim::Topology& topology,
                                      FlowId first_id = 0);

/// Feeds a flow into the network one packet event at a time.
void drive_flow(sim::Network& network, const FlowSpec& flow);

}  // namespace sdsn::traffic

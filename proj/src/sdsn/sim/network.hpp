#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "sdsn/control/controller.hpp"
#include "sdsn/sim/engine.hpp"
#include "sdsn/sim/link.hpp"
#include "sdsn/sim/packet.hpp"
#include "sdsn/sim/rtt.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::sim {

/// Data-plane hooks for audits and ground-truth accounting.
class DataPlaneObserver {
public:
  virtual ~DataPlaneObserver() = default;
  /// A switch matched the packet against an installed entry and forwarded it.
  virtual void on_forward(NodeId /*sw*/, const Packet& /*p*/, SimTime /*t*/) {}
  /// The packet reached its destination end node.
  virtual void on_deliver(NodeId /*node*/, const Packet& /*p*/, SimTime /*t*/) {}
};

struct NetworkParams {
  /// Packets a switch buffers per key while its PACKET_IN is outstanding.
  std::size_t pending_buffer = 64;
};

struct PingParams {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  SimTime interval = SimTime::from_s(1.0);
  SimTime timeout = SimTime::from_s(10.0);
  SimTime start;
  SimTime stop;  // last probe is sent strictly before stop
  std::uint32_t payload = 64;
  FlowId flow_id = kNoFlow;
};

/// Switches, links and end nodes wired to an Engine and a Controller.
/// Switches consult their flow table; a miss buffers the packet and sends
/// PACKET_IN over the control channel, and the controller's answer comes
/// back one control-channel delay later.
class Network {
public:
  Network(Engine& engine, const Topology& topology, control::Controller& controller, NetworkParams params = {});

  /// Originates a packet at an end node, at the engine's current time.
  void send(NodeId src, Packet packet);
  Packet make_packet(NodeId src, NodeId dst, std::uint32_t payload, PacketKind kind, FlowId flow) const;

  /// Starts periodic ping probes; returns the probe index for rtt().
  std::size_t start_ping(const PingParams& params);
  const RttSeries& rtt(std::size_t probe) const { return probes_.at(probe).series; }

  LinkQueue& link_queue(NodeId from, NodeId to);
  /// Counters summed over both directions of every data link.
  LinkCounters total_link_counters() const;

  Engine& engine() { return *engine_; }
  const Topology& topology() const { return *topology_; }
  control::Controller& controller() { return *controller_; }
  SimTime control_delay() const { return control_delay_; }

  void set_observer(DataPlaneObserver* observer) { observer_ = observer; }

  std::uint64_t delivered(FlowId flow) const;
  std::uint64_t switch_drops() const { return switch_drops_; }

private:
  struct Probe {
    PingParams params;
    RttSeries series;
  };

  void transmit(NodeId from, NodeId to, Packet packet);
  void arrive(NodeId node, Packet packet);
  void at_switch(NodeId sw, Packet packet);
  void forward(NodeId sw, const control::FlowEntry& entry, Packet packet);
  void at_end_node(NodeId node, Packet packet);
  void on_controller_decision(NodeId sw, control::FlowKey key, control::PacketInDecision decision);
  void send_probe(std::size_t probe, std::uint32_t seq);

  Engine* engine_;
  const Topology* topology_;
  control::Controller* controller_;
  NetworkParams params_;
  SimTime control_delay_;
  std::vector<LinkQueue> queues_;  // 2 * link index + direction
  std::map<std::pair<NodeId, control::FlowKey>, std::vector<Packet>> pending_;
  std::vector<Probe> probes_;
  std::map<FlowId, std::uint64_t> delivered_;
  std::uint64_t switch_drops_ = 0;
  DataPlaneObserver* observer_ = nullptr;
};

}  // namespace sdsn::sim

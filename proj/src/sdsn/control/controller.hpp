#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "sdsn/control/flow_table.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::control {

struct InstallFlow {
  FlowEntry entry;
};
struct DropPacket {};
struct Defer {
  SimTime until;
};
using PacketInDecision = std::variant<InstallFlow, DropPacket, Defer>;

enum class DeleteResult { deleted, not_found };

/// Hooks for audits; every callback defaults to a no-op.
class ControlObserver {
public:
  virtual ~ControlObserver() = default;
  virtual void on_packet_in(NodeId /*sw*/, const FlowKey& /*key*/, SimTime /*t*/) {}
  virtual void on_install(NodeId /*sw*/, const FlowKey& /*key*/, SimTime /*t*/) {}
  virtual void on_delete(NodeId /*sw*/, const FlowKey& /*key*/, SimTime /*t*/) {}
};

/// Reactive controller: owns every switch's flow table, answers PACKET_IN
/// with a shortest-path output port, serves flow-stats requests and DEL.
class Controller {
public:
  explicit Controller(const sim::Topology& topology);

  const sim::Topology& topology() const { return *topology_; }
  FlowTable& table(NodeId switch_id);
  const FlowTable& table(NodeId switch_id) const;

  PacketInDecision handle_packet_in(NodeId switch_id, const sim::Packet& packet, SimTime now);
  /// Applies a FLOW_MOD that was decided earlier. Refused (false) when the
  /// key entered hold-down while the message was in flight.
  bool apply_install(NodeId switch_id, const FlowEntry& entry, SimTime now);

  /// One record per live entry on the switch, ordered by key. Throws
  /// std::out_of_range for an unknown switch.
  std::vector<FlowStatsRecord> request_flow_stats(NodeId switch_id, SimTime now) const;
  DeleteResult delete_flow(NodeId switch_id, const FlowKey& key, SimTime now);
  std::vector<NodeId> switches_holding(const FlowKey& key) const;

  /// Installs or extends a re-admission hold-down for `key`.
  void hold_down(const FlowKey& key, SimTime until);
  std::optional<SimTime> hold_down_expiry(const FlowKey& key, SimTime now) const;

  std::uint64_t packet_in_count(NodeId switch_id, const FlowKey& key) const;
  std::uint64_t total_packet_ins() const { return total_packet_ins_; }

  void set_observer(ControlObserver* observer) { observer_ = observer; }

private:
  const sim::Topology* topology_;
  std::map<NodeId, FlowTable> tables_;
  std::map<FlowKey, SimTime> hold_downs_;
  std::map<std::pair<NodeId, FlowKey>, std::uint64_t> packet_ins_;
  std::uint64_t total_packet_ins_ = 0;
  ControlObserver* observer_ = nullptr;
};

}  // namespace sdsn::control

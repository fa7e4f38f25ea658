#include "sdsn/control/controller.hpp"

#include <stdexcept>

namespace sdsn::control {

Controller::Controller(const sim::Topology& topology) : topology_(&topology) {
  for (NodeId sw : topology.switches()) tables_.emplace(sw, FlowTable{});
}

FlowTable& Controller::table(NodeId switch_id) {
  auto it = tables_.find(switch_id);
  if (it == tables_.end()) throw std::out_of_range("unknown switch " + std::to_string(switch_id));
  return it->second;
}

const FlowTable& Controller::table(NodeId switch_id) const {
  auto it = tables_.find(switch_id);
  if (it == tables_.end()) throw std::out_of_range("unknown switch " + std::to_string(switch_id));
  return it->second;
}

PacketInDecision Controller::handle_packet_in(NodeId switch_id, const sim::Packet& packet, SimTime now) {
  const FlowKey key = FlowKey::of(packet);
  ++packet_ins_[{switch_id, key}];
  ++total_packet_ins_;
  if (observer_) observer_->on_packet_in(switch_id, key, now);

  if (auto until = hold_down_expiry(key, now)) return Defer{*until};

  auto dst = topology_->find_by_mac(packet.dst_mac);
  if (!dst) return DropPacket{};
  const NodeId hop = topology_->next_hop(switch_id, *dst);
  if (hop == sim::kNoNode) return DropPacket{};

  FlowEntry e;
  e.key = key;
  e.out_port = topology_->port_of(switch_id, hop);
  e.installed_at = now;
  e.last_updated = now;
  return InstallFlow{e};
}

bool Controller::apply_install(NodeId switch_id, const FlowEntry& entry, SimTime now) {
  if (hold_down_expiry(entry.key, now)) return false;
  FlowEntry e = entry;
  e.installed_at = now;
  e.last_updated = now;
  e.pckt_count = 0;
  e.byte_count = 0;
  table(switch_id).install(e);
  if (observer_) observer_->on_install(switch_id, e.key, now);
  return true;
}

std::vector<FlowStatsRecord> Controller::request_flow_stats(NodeId switch_id, SimTime now) const {
  std::vector<FlowStatsRecord> out;
  for (const auto& e : table(switch_id).snapshot()) {
    FlowStatsRecord r;
    r.polled_at = now;
    r.switch_id = switch_id;
    r.key = e.key;
    r.pckt_count = e.pckt_count;
    r.byte_count = e.byte_count;
    r.duration_s = (now - e.installed_at).seconds();
    r.installed_at = e.installed_at;
    out.push_back(r);
  }
  return out;
}

DeleteResult Controller::delete_flow(NodeId switch_id, const FlowKey& key, SimTime now) {
  if (!table(switch_id).remove(key)) return DeleteResult::not_found;
  if (observer_) observer_->on_delete(switch_id, key, now);
  return DeleteResult::deleted;
}

std::vector<NodeId> Controller::switches_holding(const FlowKey& key) const {
  std::vector<NodeId> out;
  for (const auto& [sw, t] : tables_)
    if (t.find(key)) out.push_back(sw);
  return out;
}

void Controller::hold_down(const FlowKey& key, SimTime until) {
  auto [it, inserted] = hold_downs_.emplace(key, until);
  if (!inserted && it->second < until) it->second = until;
}

std::optional<SimTime> Controller::hold_down_expiry(const FlowKey& key, SimTime now) const {
  auto it = hold_downs_.find(key);
  if (it == hold_downs_.end() || it->second <= now) return std::nullopt;
  return it->second;
}

std::uint64_t Controller::packet_in_count(NodeId switch_id, const FlowKey& key) const {
  auto it = packet_ins_.find({switch_id, key});
  return it == packet_ins_.end() ? 0 : it->second;
}

}  // namespace sdsn::control

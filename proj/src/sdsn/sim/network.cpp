#include "sdsn/sim/network.hpp"

#include <stdexcept>

namespace sdsn::sim {

Network::Network(Engine& engine, const Topology& topology, control::Controller& controller, NetworkParams params)
    : engine_(&engine), topology_(&topology), controller_(&controller), params_(params) {
  for (const auto& link : topology.links()) {
    if (link.control) {
      control_delay_ = link.params.propagation_delay;
      continue;
    }
    queues_.emplace_back(link.params);
    queues_.emplace_back(link.params);
  }
}

LinkQueue& Network::link_queue(NodeId from, NodeId to) {
  const std::size_t idx = topology_->link_index(from, to);
  const auto& link = topology_->links()[idx];
  return queues_.at(2 * idx + (link.a == from ? 0 : 1));
}

LinkCounters Network::total_link_counters() const {
  LinkCounters sum;
  for (const auto& q : queues_) {
    sum.enqueued += q.counters().enqueued;
    sum.delivered += q.counters().delivered;
    sum.dropped += q.counters().dropped;
  }
  return sum;
}

Packet Network::make_packet(NodeId src, NodeId dst, std::uint32_t payload, PacketKind kind, FlowId flow) const {
  Packet p;
  const auto& s = topology_->node(src);
  const auto& d = topology_->node(dst);
  p.src_mac = s.mac;
  p.dst_mac = d.mac;
  p.src_ip = s.ip;
  p.dst_ip = d.ip;
  p.payload_size = payload;
  p.kind = kind;
  p.flow_id = flow;
  p.created_at = engine_->now();
  return p;
}

void Network::send(NodeId src, Packet packet) {
  const NodeId sw = topology_->attachment_switch(src);
  if (sw == kNoNode) throw std::logic_error("end node without a switch");
  transmit(src, sw, std::move(packet));
}

void Network::transmit(NodeId from, NodeId to, Packet packet) {
  LinkQueue* q = &link_queue(from, to);
  auto result = q->enqueue(engine_->now());
  if (auto* d = std::get_if<Delivered>(&result)) {
    engine_->schedule(d->at, [this, q, to, p = std::move(packet)]() mutable {
      q->mark_delivered();
      arrive(to, std::move(p));
    });
  }
}

void Network::arrive(NodeId node, Packet packet) {
  if (topology_->node(node).role == NodeRole::switch_node)
    at_switch(node, std::move(packet));
  else
    at_end_node(node, std::move(packet));
}

void Network::at_switch(NodeId sw, Packet packet) {
  const SimTime now = engine_->now();
  if (const auto* entry = controller_->table(sw).match(packet, now)) {
    forward(sw, *entry, std::move(packet));
    return;
  }
  const auto key = control::FlowKey::of(packet);
  auto [it, first] = pending_.try_emplace({sw, key});
  if (!first) {
    // PACKET_IN already outstanding for this key; wait for its answer.
    if (it->second.size() < params_.pending_buffer)
      it->second.push_back(std::move(packet));
    else
      ++switch_drops_;
    return;
  }
  const Packet head = packet;
  it->second.push_back(std::move(packet));
  engine_->schedule_in(control_delay_, [this, sw, key, head]() {
    auto decision = controller_->handle_packet_in(sw, head, engine_->now());
    engine_->schedule_in(control_delay_, [this, sw, key, decision]() { on_controller_decision(sw, key, decision); });
  });
}

void Network::on_controller_decision(NodeId sw, control::FlowKey key, control::PacketInDecision decision) {
  auto node = pending_.extract({sw, key});
  std::vector<Packet> buffered;
  if (!node.empty()) buffered = std::move(node.mapped());

  const auto* install = std::get_if<control::InstallFlow>(&decision);
  if (!install || !controller_->apply_install(sw, install->entry, engine_->now())) {
    switch_drops_ += buffered.size();
    return;
  }
  for (auto& p : buffered) at_switch(sw, std::move(p));
}

void Network::forward(NodeId sw, const control::FlowEntry& entry, Packet packet) {
  if (observer_) observer_->on_forward(sw, packet, engine_->now());
  const NodeId next = topology_->neighbour_at_port(sw, entry.out_port);
  transmit(sw, next, std::move(packet));
}

void Network::at_end_node(NodeId node, Packet packet) {
  const auto& self = topology_->node(node);
  if (packet.dst_mac != self.mac) return;  // end nodes do not forward
  ++delivered_[packet.flow_id];
  if (observer_) observer_->on_deliver(node, packet, engine_->now());

  if (packet.kind == PacketKind::ping_request) {
    Packet reply = packet;
    std::swap(reply.src_mac, reply.dst_mac);
    std::swap(reply.src_ip, reply.dst_ip);
    reply.kind = PacketKind::ping_reply;
    send(node, std::move(reply));
  } else if (packet.kind == PacketKind::ping_reply) {
    for (auto& probe : probes_) {
      if (probe.params.flow_id != packet.flow_id || probe.params.src != node) continue;
      auto& sample = probe.series.probes.at(packet.probe_seq);
      const SimTime rtt = engine_->now() - sample.sent_at;
      if (!sample.rtt && rtt <= probe.params.timeout) sample.rtt = rtt;
    }
  }
}

std::size_t Network::start_ping(const PingParams& params) {
  if (params.src == params.dst) throw std::invalid_argument("ping source equals destination");
  probes_.push_back({params, {}});
  const std::size_t idx = probes_.size() - 1;
  engine_->schedule(params.start, [this, idx]() { send_probe(idx, 0); });
  return idx;
}

void Network::send_probe(std::size_t idx, std::uint32_t seq) {
  auto& probe = probes_[idx];
  const SimTime now = engine_->now();
  if (now >= probe.params.stop) return;
  probe.series.probes.push_back({now, std::nullopt});
  Packet p = make_packet(probe.params.src, probe.params.dst, probe.params.payload, PacketKind::ping_request,
                         probe.params.flow_id);
  p.probe_seq = seq;
  send(probe.params.src, std::move(p));
  engine_->schedule(now + probe.params.interval, [this, idx, seq]() { send_probe(idx, seq + 1); });
}

std::uint64_t Network::delivered(FlowId flow) const {
  auto it = delivered_.find(flow);
  return it == delivered_.end() ? 0 : it->second;
}

}  // namespace sdsn::sim

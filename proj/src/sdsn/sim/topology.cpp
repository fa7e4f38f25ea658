#include "sdsn/sim/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>

#include "sdsn/core/error.hpp"

namespace sdsn::sim {

const char* to_string(NodeRole role) {
  switch (role) {
    case NodeRole::host: return "host";
    case NodeRole::sensor: return "sensor";
    case NodeRole::switch_node: return "switch";
    case NodeRole::controller: return "controller";
  }
  return "?";
}

std::string MacAddress::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                static_cast<unsigned>((value >> 40) & 0xff), static_cast<unsigned>((value >> 32) & 0xff),
                static_cast<unsigned>((value >> 24) & 0xff), static_cast<unsigned>((value >> 16) & 0xff),
                static_cast<unsigned>((value >> 8) & 0xff), static_cast<unsigned>(value & 0xff));
  return buf;
}

std::optional<MacAddress> MacAddress::parse(const std::string& text) {
  unsigned b[6];
  char tail;
  if (std::sscanf(text.c_str(), "%2x:%2x:%2x:%2x:%2x:%2x%c", &b[0], &b[1], &b[2], &b[3], &b[4], &b[5],
                  &tail) != 6)
    return std::nullopt;
  std::uint64_t v = 0;
  for (unsigned byte : b) v = (v << 8) | byte;
  return MacAddress{v};
}

std::string Ipv4Address::to_string() const {
  return std::to_string((value >> 24) & 0xff) + "." + std::to_string((value >> 16) & 0xff) + "." +
         std::to_string((value >> 8) & 0xff) + "." + std::to_string(value & 0xff);
}

std::optional<Ipv4Address> Ipv4Address::parse(const std::string& text) {
  unsigned b[4];
  char tail;
  if (std::sscanf(text.c_str(), "%u.%u.%u.%u%c", &b[0], &b[1], &b[2], &b[3], &tail) != 4) return std::nullopt;
  std::uint32_t v = 0;
  for (unsigned byte : b) {
    if (byte > 255) return std::nullopt;
    v = (v << 8) | byte;
  }
  return Ipv4Address{v};
}

namespace {

TopologySpec::NodeSpec node_spec(std::string name, NodeRole role) {
  TopologySpec::NodeSpec n;
  n.name = std::move(name);
  n.role = role;
  return n;
}

void add_access(TopologySpec& spec, const std::string& end, const std::string& sw, const PresetLinkParams& p) {
  spec.links.push_back({end, sw, end == p.target ? p.target_access : p.access});
}

}  // namespace

TopologySpec test_preset(const PresetLinkParams& p) {
  TopologySpec spec;
  spec.default_params = p.access;
  spec.nodes.push_back(node_spec("c0", NodeRole::controller));
  for (const char* s : {"s1", "s2", "s3"}) spec.nodes.push_back(node_spec(s, NodeRole::switch_node));
  for (int i = 1; i <= 6; ++i) spec.nodes.push_back(node_spec("h" + std::to_string(i), NodeRole::host));
  for (int i = 1; i <= 4; ++i) spec.nodes.push_back(node_spec("sn" + std::to_string(i), NodeRole::sensor));

  spec.links.push_back({"s1", "s2", p.core});
  spec.links.push_back({"s1", "s3", p.core});
  for (const char* h : {"h1", "h2"}) add_access(spec, h, "s1", p);
  for (const char* h : {"h3", "h4", "sn1", "sn2"}) add_access(spec, h, "s2", p);
  for (const char* h : {"h5", "h6", "sn3", "sn4"}) add_access(spec, h, "s3", p);
  return spec;
}

TopologySpec minimal_preset(const PresetLinkParams& p) {
  TopologySpec spec;
  spec.default_params = p.access;
  spec.nodes.push_back(node_spec("c0", NodeRole::controller));
  spec.nodes.push_back(node_spec("s1", NodeRole::switch_node));
  spec.nodes.push_back(node_spec("h1", NodeRole::host));
  spec.nodes.push_back(node_spec("h2", NodeRole::host));
  add_access(spec, "h1", "s1", p);
  add_access(spec, "h2", "s1", p);
  return spec;
}

TopologySpec scaling_preset(std::size_t sensor_count, const PresetLinkParams& p) {
  if (sensor_count < 100 || sensor_count > 1000)
    throw ConfigError("topology.node_count: " + std::to_string(sensor_count) + " outside [100, 1000]");
  TopologySpec spec = test_preset(p);
  const char* switches[] = {"s1", "s2", "s3"};
  for (std::size_t i = 0; i < sensor_count; ++i) {
    const std::string name = "sx" + std::to_string(i + 1);
    spec.nodes.push_back(node_spec(name, NodeRole::sensor));
    add_access(spec, name, switches[i % 3], p);
  }
  return spec;
}

Topology Topology::build(const TopologySpec& spec) {
  Topology t;
  std::uint32_t next_host_ip = 1;
  std::uint32_t next_sensor_ip = 1;
  std::uint32_t next_infra_ip = 1;

  for (const auto& ns : spec.nodes) {
    if (ns.name.empty()) throw ConfigError("topology: node with empty name");
    if (t.by_name_.count(ns.name)) throw ConfigError("topology: duplicate node name '" + ns.name + "'");
    Node n;
    n.id = static_cast<NodeId>(t.nodes_.size());
    n.name = ns.name;
    n.role = ns.role;
    n.mac = ns.mac.value_or(MacAddress{static_cast<std::uint64_t>(n.id) + 1});
    if (ns.ip) {
      n.ip = *ns.ip;
    } else if (ns.role == NodeRole::host) {
      n.ip = Ipv4Address{(10u << 24) | next_host_ip++};
    } else if (ns.role == NodeRole::sensor) {
      const std::uint32_t k = next_sensor_ip++;
      n.ip = Ipv4Address{(10u << 24) | ((1u + k / 250) << 8) | (k % 250 + 1)};
    } else {
      n.ip = Ipv4Address{(10u << 24) | (255u << 16) | next_infra_ip++};
    }
    if (t.by_mac_.count(n.mac.value))
      throw ConfigError("topology: duplicate address " + n.mac.to_string() + " on node '" + n.name + "'");
    if (t.by_ip_.count(n.ip.value))
      throw ConfigError("topology: duplicate address " + n.ip.to_string() + " on node '" + n.name + "'");
    if (n.role == NodeRole::controller) {
      if (t.controller_ != kNoNode) throw ConfigError("topology: second controller '" + n.name + "'");
      t.controller_ = n.id;
    }
    t.by_name_[n.name] = n.id;
    t.by_mac_[n.mac.value] = n.id;
    t.by_ip_[n.ip.value] = n.id;
    t.nodes_.push_back(std::move(n));
  }
  if (t.controller_ == kNoNode) throw ConfigError("topology: missing controller");

  t.adjacency_.resize(t.nodes_.size());
  for (const auto& ls : spec.links) {
    auto a = t.find(ls.a);
    auto b = t.find(ls.b);
    if (!a) throw ConfigError("topology: link references unknown node '" + ls.a + "'");
    if (!b) throw ConfigError("topology: link references unknown node '" + ls.b + "'");
    if (*a == *b) throw ConfigError("topology: self link on '" + ls.a + "'");
    if (*a == t.controller_ || *b == t.controller_)
      throw ConfigError("topology: data link " + ls.a + "-" + ls.b + " touches the controller");
    const auto key = std::minmax(*a, *b);
    if (t.link_lookup_.count({key.first, key.second}))
      throw ConfigError("topology: duplicate link " + ls.a + "-" + ls.b);
    if (!(ls.params.capacity_pps > 0.0)) throw ConfigError("topology: link " + ls.a + "-" + ls.b + " capacity must be > 0");
    if (ls.params.queue_capacity < 1)
      throw ConfigError("topology: link " + ls.a + "-" + ls.b + " queue_capacity must be >= 1");
    t.link_lookup_[{key.first, key.second}] = t.links_.size();
    t.links_.push_back({*a, *b, ls.params, false});
    t.adjacency_[*a].push_back(*b);
    t.adjacency_[*b].push_back(*a);
  }
  for (auto& adj : t.adjacency_) std::sort(adj.begin(), adj.end());

  // Every switch gets a control channel; end nodes must hang off a switch.
  std::size_t switch_count = 0;
  for (const auto& n : t.nodes_) {
    if (n.role == NodeRole::switch_node) {
      ++switch_count;
      t.links_.push_back({n.id, t.controller_, spec.control_params, true});
    } else if (n.role == NodeRole::host || n.role == NodeRole::sensor) {
      const auto& adj = t.adjacency_[n.id];
      if (std::none_of(adj.begin(), adj.end(),
                       [&](NodeId v) { return t.nodes_[v].role == NodeRole::switch_node; }))
        throw ConfigError("topology: " + std::string(to_string(n.role)) + " '" + n.name +
                          "' has no link to a switch");
    }
  }
  if (switch_count == 0) throw ConfigError("topology: no switch");

  // Connectivity over the data plane (controller excluded).
  std::vector<bool> seen(t.nodes_.size(), false);
  std::deque<NodeId> queue;
  const NodeId start = t.controller_ == 0 ? 1 : 0;
  seen[start] = true;
  queue.push_back(start);
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : t.adjacency_[u])
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
  }
  for (const auto& n : t.nodes_)
    if (n.id != t.controller_ && !seen[n.id])
      throw ConfigError("topology: disconnected graph, node '" + n.name + "' unreachable");

  t.compute_distances();
  return t;
}

void Topology::compute_distances() {
  const std::size_t n = nodes_.size();
  distance_.assign(n, {});
  for (NodeId dst = 0; dst < n; ++dst) {
    if (dst == controller_) continue;
    auto& dist = distance_[dst];
    dist.assign(n, -1);
    dist[dst] = 0;
    std::deque<NodeId> queue{dst};
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      // End nodes terminate paths; only the destination itself may be one.
      if (u != dst && nodes_[u].role != NodeRole::switch_node) continue;
      for (NodeId v : adjacency_[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
  }
}

std::vector<NodeId> Topology::switches() const { return nodes_with_role(NodeRole::switch_node); }

std::vector<NodeId> Topology::nodes_with_role(NodeRole role) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_)
    if (n.role == role) out.push_back(n.id);
  return out;
}

std::optional<NodeId> Topology::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeId Topology::require(const std::string& name) const {
  auto id = find(name);
  if (!id) throw ConfigError("unknown node '" + name + "'");
  return *id;
}

std::optional<NodeId> Topology::find_by_mac(MacAddress mac) const {
  auto it = by_mac_.find(mac.value);
  if (it == by_mac_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> Topology::find_by_ip(Ipv4Address ip) const {
  auto it = by_ip_.find(ip.value);
  if (it == by_ip_.end()) return std::nullopt;
  return it->second;
}

std::size_t Topology::link_index(NodeId from, NodeId to) const {
  auto key = std::minmax(from, to);
  return link_lookup_.at({key.first, key.second});
}

std::uint32_t Topology::port_of(NodeId from, NodeId to) const {
  const auto& adj = adjacency_.at(from);
  auto it = std::lower_bound(adj.begin(), adj.end(), to);
  if (it == adj.end() || *it != to) throw std::out_of_range("nodes not adjacent");
  return static_cast<std::uint32_t>(it - adj.begin());
}

NodeId Topology::neighbour_at_port(NodeId from, std::uint32_t port) const { return adjacency_.at(from).at(port); }

NodeId Topology::next_hop(NodeId from, NodeId dst) const {
  if (dst >= distance_.size() || distance_[dst].empty() || from == dst) return kNoNode;
  const auto& dist = distance_[dst];
  if (dist[from] < 0) return kNoNode;
  for (NodeId v : adjacency_[from])  // ascending, so the first match is the lowest id
    if (dist[v] == dist[from] - 1) return v;
  return kNoNode;
}

std::vector<NodeId> Topology::path(NodeId src, NodeId dst) const {
  std::vector<NodeId> out{src};
  NodeId cur = src;
  while (cur != dst) {
    cur = next_hop(cur, dst);
    if (cur == kNoNode) return {};
    out.push_back(cur);
  }
  return out;
}

NodeId Topology::attachment_switch(NodeId end_node) const {
  for (NodeId v : adjacency_.at(end_node))
    if (nodes_[v].role == NodeRole::switch_node) return v;
  return kNoNode;
}

}  // namespace sdsn::sim

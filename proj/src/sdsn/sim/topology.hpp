#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdsn/core/time.hpp"

namespace sdsn::sim {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

enum class NodeRole { host, sensor, switch_node, controller };

const char* to_string(NodeRole role);

struct MacAddress {
  std::uint64_t value = 0;  // low 48 bits

  std::string to_string() const;
  static std::optional<MacAddress> parse(const std::string& text);
  auto operator<=>(const MacAddress&) const = default;
};

struct Ipv4Address {
  std::uint32_t value = 0;

  std::string to_string() const;
  static std::optional<Ipv4Address> parse(const std::string& text);
  auto operator<=>(const Ipv4Address&) const = default;
};

struct LinkParams {
  SimTime propagation_delay = SimTime::from_us(100);
  double capacity_pps = 10000.0;
  std::size_t queue_capacity = 1000;
};

struct Node {
  NodeId id = kNoNode;
  std::string name;
  NodeRole role = NodeRole::host;
  MacAddress mac;
  Ipv4Address ip;
};

struct Link {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  LinkParams params;
  bool control = false;  // switch <-> controller channel
};

/// Declarative description, either written by hand or produced by a preset.
struct TopologySpec {
  struct NodeSpec {
    std::string name;
    NodeRole role = NodeRole::host;
    std::optional<MacAddress> mac;
    std::optional<Ipv4Address> ip;
  };
  struct LinkSpec {
    std::string a;
    std::string b;
    LinkParams params;
  };
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  /// Links whose spec omits parameters fall back to these.
  LinkParams default_params;
  LinkParams control_params{SimTime::from_ms(1), 1e9, 1u << 20};
};

/// Link parameters for the built-in presets.
struct PresetLinkParams {
  LinkParams core{SimTime::from_us(200), 100000.0, 20000};
  LinkParams access{SimTime::from_us(100), 2000.0, 1000};
  /// Access link of the attacked host; the constrained sink of a sensor field.
  LinkParams target_access{SimTime::from_us(100), 1000.0, 15000};
  std::string target = "h1";
};

/// Six-host, three-switch test network: s1 {h1,h2}, s2 {h3,h4,sn1,sn2},
/// s3 {h5,h6,sn3,sn4}; s2 and s3 uplink to s1; controller c0.
TopologySpec test_preset(const PresetLinkParams& params = {});
/// One switch, two hosts, one controller.
TopologySpec minimal_preset(const PresetLinkParams& params = {});
/// Test preset plus `sensor_count` extra sensors spread over the three
/// switches (100 to 1000 sensors).
TopologySpec scaling_preset(std::size_t sensor_count, const PresetLinkParams& params = {});

class Topology {
public:
  /// Validates and builds; throws ConfigError naming the offending element.
  static Topology build(const TopologySpec& spec);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Link>& links() const { return links_; }
  NodeId controller() const { return controller_; }
  std::vector<NodeId> switches() const;
  std::vector<NodeId> nodes_with_role(NodeRole role) const;

  std::optional<NodeId> find(const std::string& name) const;
  NodeId require(const std::string& name) const;
  std::optional<NodeId> find_by_mac(MacAddress mac) const;
  std::optional<NodeId> find_by_ip(Ipv4Address ip) const;

  /// Data-plane neighbours (control links excluded), ascending NodeId.
  const std::vector<NodeId>& neighbours(NodeId id) const { return adjacency_.at(id); }
  /// Index of the data link between two adjacent nodes.
  std::size_t link_index(NodeId from, NodeId to) const;
  /// Port number of `to` on `from`: its position in neighbours(from).
  std::uint32_t port_of(NodeId from, NodeId to) const;
  NodeId neighbour_at_port(NodeId from, std::uint32_t port) const;

  /// Next hop on the hop-count shortest path; ties go to the lowest NodeId.
  /// Hosts and sensors never carry transit traffic. kNoNode if unreachable.
  NodeId next_hop(NodeId from, NodeId dst) const;
  /// Full path including both endpoints; empty if unreachable.
  std::vector<NodeId> path(NodeId src, NodeId dst) const;
  /// The switch an end node is attached to (first switch neighbour).
  NodeId attachment_switch(NodeId end_node) const;

private:
  void compute_distances();

  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> link_lookup_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::map<std::uint64_t, NodeId> by_mac_;
  std::map<std::uint32_t, NodeId> by_ip_;
  NodeId controller_ = kNoNode;
  // distance_[dst][node]: data-plane hop count, -1 when unreachable.
  std::vector<std::vector<int>> distance_;
};

}  // namespace sdsn::sim

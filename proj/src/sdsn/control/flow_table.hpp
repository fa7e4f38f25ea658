#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sdsn/core/time.hpp"
#include "sdsn/sim/packet.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::control {

using sim::MacAddress;
using sim::NodeId;

/// Match on the Ethernet source/destination pair; direction-sensitive.
struct FlowKey {
  MacAddress eth_src;
  MacAddress eth_dst;

  static FlowKey of(const sim::Packet& p) { return {p.src_mac, p.dst_mac}; }
  auto operator<=>(const FlowKey&) const = default;
};

struct FlowKeyHash {
  std::size_t operator()(const FlowKey& k) const {
    return std::hash<std::uint64_t>{}(k.eth_src.value * 0x100000001B3ULL ^ k.eth_dst.value);
  }
};

struct FlowEntry {
  FlowKey key;
  std::uint32_t out_port = 0;
  SimTime installed_at;
  std::uint64_t pckt_count = 0;
  std::uint64_t byte_count = 0;
  SimTime last_updated;
};

struct FlowStatsRecord {
  SimTime polled_at;
  NodeId switch_id = sim::kNoNode;
  FlowKey key;
  std::uint64_t pckt_count = 0;
  std::uint64_t byte_count = 0;
  double duration_s = 0.0;
  SimTime installed_at;  // distinguishes a reinstalled entry from the old one
};

/// A single OpenFlow-style table: exact match on FlowKey, no priorities,
/// no idle or hard timeouts.
class FlowTable {
public:
  /// On a hit, counts the packet (one packet, payload_size bytes) and returns
  /// the entry; a miss returns nullptr and leaves the table unchanged.
  const FlowEntry* match(const sim::Packet& packet, SimTime now);

  void install(const FlowEntry& entry);
  bool remove(const FlowKey& key);
  const FlowEntry* find(const FlowKey& key) const;
  std::size_t size() const { return entries_.size(); }

  /// Entries ordered by key.
  std::vector<FlowEntry> snapshot() const;

private:
  std::unordered_map<FlowKey, FlowEntry, FlowKeyHash> entries_;
};

}  // namespace sdsn::control

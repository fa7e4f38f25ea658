#pragma once

#include <cstdint>

#include "sdsn/core/time.hpp"
#include "sdsn/sim/topology.hpp"

namespace sdsn::sim {

using FlowId = std::uint32_t;
inline constexpr FlowId kNoFlow = UINT32_MAX;

enum class PacketKind : std::uint8_t { udp_data, ping_request, ping_reply, control };

struct Packet {
  MacAddress src_mac;
  MacAddress dst_mac;
  Ipv4Address src_ip;
  Ipv4Address dst_ip;
  std::uint32_t payload_size = 0;
  PacketKind kind = PacketKind::udp_data;
  FlowId flow_id = kNoFlow;  // ground-truth tag, never inspected by the defense
  SimTime created_at;
  std::uint32_t probe_seq = 0;  // ping sequence number
};

}  // namespace sdsn::sim

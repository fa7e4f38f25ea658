#include "sdsn/control/flow_table.hpp"

#include <algorithm>

namespace sdsn::control {

const FlowEntry* FlowTable::match(const sim::Packet& packet, SimTime now) {
  auto it = entries_.find(FlowKey::of(packet));
  if (it == entries_.end()) return nullptr;
  auto& e = it->second;
  ++e.pckt_count;
  e.byte_count += packet.payload_size;
  e.last_updated = now;
  return &e;
}

void FlowTable::install(const FlowEntry& entry) { entries_[entry.key] = entry; }

bool FlowTable::remove(const FlowKey& key) { return entries_.erase(key) > 0; }

const FlowEntry* FlowTable::find(const FlowKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<FlowEntry> FlowTable::snapshot() const {
  std::vector<FlowEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const FlowEntry& a, const FlowEntry& b) { return a.key < b.key; });
  return out;
}

}  // namespace sdsn::control

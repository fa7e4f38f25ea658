#include <gtest/gtest.h>

#include <map>
#include <random>

#include "sdsn/control/controller.hpp"
#include "sdsn/sim/network.hpp"

using namespace sdsn;
using namespace sdsn::control;

namespace {

sim::Packet packet(const sim::Topology& t, const char* src, const char* dst, std::uint32_t size) {
  sim::Packet p;
  p.src_mac = t.node(t.require(src)).mac;
  p.dst_mac = t.node(t.require(dst)).mac;
  p.payload_size = size;
  return p;
}

}  // namespace

TEST(FlowTable, MatchCountsHitsOnly) {
  const auto t = sim::Topology::build(sim::minimal_preset());
  FlowTable table;
  const auto p = packet(t, "h1", "h2", 100);
  EXPECT_EQ(table.match(p, SimTime{}), nullptr);
  table.install({FlowKey::of(p), 1, SimTime{}, 0, 0, SimTime{}});
  for (int i = 0; i < 3; ++i) ASSERT_NE(table.match(p, SimTime::from_s(i)), nullptr);
  const auto* e = table.find(FlowKey::of(p));
  EXPECT_EQ(e->pckt_count, 3u);
  EXPECT_EQ(e->byte_count, 300u);
  EXPECT_TRUE(table.remove(FlowKey::of(p)));
  EXPECT_FALSE(table.remove(FlowKey::of(p)));
}

TEST(FlowTable, SnapshotIsOrdered) {
  FlowTable table;
  for (std::uint64_t s : {5u, 2u, 9u}) table.install({{{s}, {1}}, 0, SimTime{}, 0, 0, SimTime{}});
  const auto snap = table.snapshot();
  ASSERT_EQ(snap.size(), 3u);
  EXPECT_LT(snap[0].key, snap[1].key);
  EXPECT_LT(snap[1].key, snap[2].key);
}

TEST(Controller, PacketInInstallsShortestPathPort) {
  const auto t = sim::Topology::build(sim::test_preset());
  Controller c(t);
  const auto s2 = t.require("s2");
  auto d = c.handle_packet_in(s2, packet(t, "h3", "h1", 10), SimTime::from_s(1));
  auto* inst = std::get_if<InstallFlow>(&d);
  ASSERT_NE(inst, nullptr);
  EXPECT_EQ(t.neighbour_at_port(s2, inst->entry.out_port), t.require("s1"));
  EXPECT_TRUE(c.apply_install(s2, inst->entry, SimTime::from_s(1)));
  EXPECT_EQ(c.packet_in_count(s2, inst->entry.key), 1u);
  EXPECT_EQ(c.switches_holding(inst->entry.key), std::vector<sim::NodeId>{s2});
}

TEST(Controller, UnknownDestinationIsDropped) {
  const auto t = sim::Topology::build(sim::test_preset());
  Controller c(t);
  auto p = packet(t, "h3", "h1", 10);
  p.dst_mac = sim::MacAddress{0xdead};
  EXPECT_TRUE(std::holds_alternative<DropPacket>(c.handle_packet_in(t.require("s2"), p, SimTime{})));
}

TEST(Controller, HoldDownDefersAndBlocksInFlightInstall) {
  const auto t = sim::Topology::build(sim::test_preset());
  Controller c(t);
  const auto s2 = t.require("s2");
  const auto p = packet(t, "h3", "h1", 10);
  auto d = c.handle_packet_in(s2, p, SimTime::from_s(1));
  c.hold_down(FlowKey::of(p), SimTime::from_s(31));
  EXPECT_FALSE(c.apply_install(s2, std::get<InstallFlow>(d).entry, SimTime::from_s(1)));
  auto d2 = c.handle_packet_in(s2, p, SimTime::from_s(2));
  ASSERT_TRUE(std::holds_alternative<Defer>(d2));
  EXPECT_EQ(std::get<Defer>(d2).until, SimTime::from_s(31));
  // extension only moves the expiry forward
  c.hold_down(FlowKey::of(p), SimTime::from_s(10));
  EXPECT_EQ(c.hold_down_expiry(FlowKey::of(p), SimTime::from_s(2)), SimTime::from_s(31));
  EXPECT_FALSE(c.hold_down_expiry(FlowKey::of(p), SimTime::from_s(31)).has_value());
  EXPECT_TRUE(std::holds_alternative<InstallFlow>(c.handle_packet_in(s2, p, SimTime::from_s(31))));
}

TEST(Controller, FlowStatsAndDelete) {
  const auto t = sim::Topology::build(sim::test_preset());
  Controller c(t);
  EXPECT_TRUE(c.request_flow_stats(t.require("s1"), SimTime{}).empty());
  EXPECT_THROW(c.request_flow_stats(t.require("h1"), SimTime{}), std::out_of_range);
  const auto s1 = t.require("s1");
  const auto p = packet(t, "h2", "h1", 10);
  c.apply_install(s1, std::get<InstallFlow>(c.handle_packet_in(s1, p, SimTime{})).entry, SimTime::from_s(1));
  const auto recs = c.request_flow_stats(s1, SimTime::from_s(3));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_DOUBLE_EQ(recs[0].duration_s, 2.0);
  EXPECT_EQ(c.delete_flow(s1, FlowKey::of(p), SimTime::from_s(3)), DeleteResult::deleted);
  EXPECT_EQ(c.delete_flow(s1, FlowKey::of(p), SimTime::from_s(3)), DeleteResult::not_found);
}

namespace {

/// Recounts every forwarded packet per (switch, key) since its last install
/// and every PACKET_IN / install pair.
class Recorder final : public sim::DataPlaneObserver, public ControlObserver {
public:
  struct Count {
    std::uint64_t packets = 0;
    std::uint64_t bytes = 0;
  };
  std::map<std::pair<sim::NodeId, FlowKey>, Count> hits;
  std::map<std::pair<sim::NodeId, FlowKey>, std::uint64_t> packet_ins, installs;
  std::uint64_t forwarded = 0;

  void on_forward(sim::NodeId sw, const sim::Packet& p, SimTime) override {
    auto& c = hits[{sw, FlowKey::of(p)}];
    ++c.packets;
    c.bytes += p.payload_size;
    ++forwarded;
  }
  void on_packet_in(sim::NodeId sw, const FlowKey& k, SimTime) override { ++packet_ins[{sw, k}]; }
  void on_install(sim::NodeId sw, const FlowKey& k, SimTime) override {
    ++installs[{sw, k}];
    hits[{sw, k}] = {};
  }
  void on_delete(sim::NodeId sw, const FlowKey& k, SimTime) override { hits.erase({sw, k}); }
};

}  // namespace

TEST(ControlPlaneProperty, OnePacketInPerInstallAndCountersMatchRecount) {
  const auto t = sim::Topology::build(sim::test_preset());
  sim::Engine engine;
  Controller c(t);
  sim::Network net(engine, t, c);
  Recorder rec;
  net.set_observer(&rec);
  c.set_observer(&rec);

  std::vector<sim::NodeId> ends;
  for (const auto& n : t.nodes())
    if (n.role == sim::NodeRole::host || n.role == sim::NodeRole::sensor) ends.push_back(n.id);

  std::mt19937_64 gen(42);
  constexpr int kPackets = 120000;
  for (int i = 0; i < kPackets; ++i) {
    const auto src = ends[gen() % ends.size()];
    auto dst = ends[gen() % ends.size()];
    if (dst == src) dst = ends[(std::find(ends.begin(), ends.end(), src) - ends.begin() + 1) % ends.size()];
    const auto size = static_cast<std::uint32_t>(100 + gen() % 900);
    engine.schedule(SimTime::from_us(i * 250), [&net, src, dst, size] {
      net.send(src, net.make_packet(src, dst, size, sim::PacketKind::udp_data, 1));
    });
  }
  // random deletions force re-installation
  for (int k = 1; k <= 200; ++k) {
    engine.schedule(SimTime::from_ms(k * 140), [&c, &gen, &t] {
      const auto sws = t.switches();
      const auto sw = sws[gen() % sws.size()];
      auto snap = c.table(sw).snapshot();
      if (!snap.empty()) c.delete_flow(sw, snap[gen() % snap.size()].key, SimTime{});
    });
  }
  engine.run_until(SimTime::from_s(40));

  EXPECT_GE(rec.forwarded, static_cast<std::uint64_t>(kPackets));
  EXPECT_EQ(rec.packet_ins, rec.installs);
  for (const auto& [key, n] : rec.packet_ins) EXPECT_EQ(c.packet_in_count(key.first, key.second), n);
  std::size_t live = 0;
  for (auto sw : t.switches()) {
    for (const auto& e : c.table(sw).snapshot()) {
      ++live;
      const auto& h = rec.hits.at({sw, e.key});
      EXPECT_EQ(e.pckt_count, h.packets);
      EXPECT_EQ(e.byte_count, h.bytes);
    }
  }
  EXPECT_GT(live, 0u);
}

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sdsn/core/error.hpp"
#include "sdsn/sim/engine.hpp"
#include "sdsn/sim/link.hpp"
#include "sdsn/sim/network.hpp"
#include "sdsn/sim/rtt.hpp"
#include "sdsn/sim/topology.hpp"

using namespace sdsn;
using namespace sdsn::sim;

TEST(SimTime, ConversionsRoundTrip) {
  EXPECT_EQ(SimTime::from_us(1500).ns(), 1'500'000);
  EXPECT_EQ(SimTime::from_s(1.5).us(), 1'500'000);
  EXPECT_DOUBLE_EQ(SimTime::from_ms(250).seconds(), 0.25);
  EXPECT_LT(SimTime::from_us(1), SimTime::from_us(2));
}

TEST(Engine, PopsInTimeThenInsertionOrder) {
  Engine e;
  std::vector<int> order;
  e.schedule(SimTime::from_us(20), [&] { order.push_back(3); });
  e.schedule(SimTime::from_us(10), [&] { order.push_back(1); });
  e.schedule(SimTime::from_us(10), [&] { order.push_back(2); });
  auto st = e.run_until(SimTime::from_us(100));
  EXPECT_EQ(order, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(st.processed, 3u);
  EXPECT_EQ(e.now(), SimTime::from_us(100));
}

TEST(Engine, RejectsPastEvents) {
  Engine e;
  e.run_until(SimTime::from_us(50));
  EXPECT_THROW(e.schedule(SimTime::from_us(10), [] {}), std::logic_error);
}

TEST(Engine, ClockNeverDecreasesDuringCascade) {
  Engine e;
  SimTime last;
  bool monotone = true;
  std::function<void(int)> chain = [&](int n) {
    if (e.now() < last) monotone = false;
    last = e.now();
    if (n > 0) e.schedule_in(SimTime::from_us(n % 3), [&, n] { chain(n - 1); });
  };
  e.schedule(SimTime{}, [&] { chain(200); });
  e.run_until(SimTime::from_s(1));
  EXPECT_TRUE(monotone);
}

TEST(Topology, TestPresetShape) {
  const auto t = Topology::build(test_preset());
  EXPECT_EQ(t.switches().size(), 3u);
  EXPECT_EQ(t.nodes_with_role(NodeRole::host).size(), 6u);
  EXPECT_EQ(t.nodes_with_role(NodeRole::sensor).size(), 4u);
  EXPECT_EQ(t.node(t.require("h1")).ip.to_string(), "10.0.0.1");
  const auto path = t.path(t.require("h3"), t.require("h1"));
  ASSERT_EQ(path.size(), 4u);
  EXPECT_EQ(t.node(path[1]).name, "s2");
  EXPECT_EQ(t.node(path[2]).name, "s1");
}

TEST(Topology, AddressesAreUnique) {
  const auto t = Topology::build(scaling_preset(300));
  std::set<std::uint64_t> macs;
  std::set<std::uint32_t> ips;
  for (const auto& n : t.nodes()) {
    EXPECT_TRUE(macs.insert(n.mac.value).second);
    EXPECT_TRUE(ips.insert(n.ip.value).second);
  }
}

TEST(Topology, RejectsInvalidSpecs) {
  auto spec = minimal_preset();
  spec.nodes.push_back(spec.nodes.back());
  EXPECT_THROW(Topology::build(spec), ConfigError);

  spec = minimal_preset();
  spec.links.push_back({"h1", "nobody", {}});
  EXPECT_THROW(Topology::build(spec), ConfigError);

  spec = minimal_preset();
  spec.links[0].params.capacity_pps = 0;
  EXPECT_THROW(Topology::build(spec), ConfigError);

  spec = minimal_preset();
  spec.nodes.push_back({"island", NodeRole::host, std::nullopt, std::nullopt});
  EXPECT_THROW(Topology::build(spec), ConfigError);

  EXPECT_THROW(scaling_preset(50), ConfigError);
}

TEST(Topology, EndNodesDoNotCarryTransit) {
  const auto t = Topology::build(test_preset());
  for (const auto& a : t.nodes()) {
    if (a.role == NodeRole::controller || a.role == NodeRole::switch_node) continue;
    for (const auto& b : t.nodes()) {
      if (b.id == a.id || b.role == NodeRole::controller || b.role == NodeRole::switch_node) continue;
      const auto p = t.path(a.id, b.id);
      ASSERT_GE(p.size(), 3u);
      for (std::size_t i = 1; i + 1 < p.size(); ++i) EXPECT_EQ(t.node(p[i]).role, NodeRole::switch_node);
    }
  }
}

TEST(Address, MacAndIpParse) {
  EXPECT_EQ(MacAddress{0x0a}.to_string(), "00:00:00:00:00:0a");
  EXPECT_EQ(MacAddress::parse("00:00:00:00:00:0a")->value, 0x0au);
  EXPECT_FALSE(MacAddress::parse("zz").has_value());
  EXPECT_EQ(Ipv4Address::parse("10.0.1.7")->to_string(), "10.0.1.7");
  EXPECT_FALSE(Ipv4Address::parse("10.0.1").has_value());
}

TEST(LinkQueue, MatchesFifoOracle) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    LinkParams p{SimTime::from_us(100), 1000.0 + 500.0 * (trial % 4), static_cast<std::size_t>(1 + trial % 7)};
    LinkQueue q(p);
    std::vector<double> arrivals;
    double t = 0;
    for (int i = 0; i < 500; ++i) {
      t += static_cast<double>(gen() % 1'500'000);
      arrivals.push_back(t);
    }
    const auto expect = oracle::fifo(arrivals, 1e9 / p.capacity_pps, p.queue_capacity);
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
      auto r = q.enqueue(SimTime::from_ns(static_cast<std::int64_t>(arrivals[i])));
      if (!expect[i]) {
        EXPECT_TRUE(std::holds_alternative<Dropped>(r));
      } else {
        ASSERT_TRUE(std::holds_alternative<Delivered>(r));
        EXPECT_EQ(std::get<Delivered>(r).at.ns(), std::llround(*expect[i]) + p.propagation_delay.ns());
      }
    }
    const auto& c = q.counters();
    EXPECT_EQ(c.enqueued, 500u);
    EXPECT_EQ(c.in_flight() + c.dropped + c.delivered, c.enqueued);
  }
}

TEST(LinkQueue, OccupancyNeverExceedsCapacity) {
  LinkQueue q({SimTime::from_us(10), 100.0, 5});
  for (int i = 0; i < 100; ++i) {
    q.enqueue(SimTime::from_us(i * 100));
    EXPECT_LE(q.occupancy(SimTime::from_us(i * 100)), 5u);
  }
  EXPECT_GT(q.counters().dropped, 0u);
}

namespace {

struct Net {
  Engine engine;
  Topology topo;
  control::Controller controller;
  Network net;
  explicit Net(TopologySpec spec) : topo(Topology::build(spec)), controller(topo), net(engine, topo, controller) {}
};

}  // namespace

TEST(Network, PingOnIdleNetworkHasSmallRtt) {
  Net n(test_preset());
  PingParams p;
  p.src = n.topo.require("h6");
  p.dst = n.topo.require("h1");
  p.start = SimTime::from_s(1);
  p.stop = SimTime::from_s(6);
  p.flow_id = 1;
  const auto idx = n.net.start_ping(p);
  n.engine.run_until(SimTime::from_s(20));
  const auto& s = n.net.rtt(idx);
  ASSERT_EQ(s.probes.size(), 5u);
  EXPECT_EQ(s.timeouts(), 0u);
  // first probe pays the reactive setup on both paths
  EXPECT_GT(*s.probes[0].rtt, *s.probes[1].rtt);
  EXPECT_LT(s.probes[1].rtt->seconds(), 0.01);
}

TEST(Network, OverloadedLinkCausesTimeouts) {
  PresetLinkParams lp;
  lp.access = {SimTime::from_us(100), 100.0, 5000};
  Net n(minimal_preset(lp));
  const auto h1 = n.topo.require("h1"), h2 = n.topo.require("h2");
  for (int i = 0; i < 3000; ++i) {
    n.engine.schedule(SimTime::from_us(i * 1000), [&n, h1, h2] {
      n.net.send(h1, n.net.make_packet(h1, h2, 100, PacketKind::udp_data, 9));
    });
  }
  PingParams p;
  p.src = h1;
  p.dst = h2;
  p.start = SimTime::from_s(1);
  p.stop = SimTime::from_s(20);
  p.timeout = SimTime::from_s(2);
  p.flow_id = 1;
  const auto idx = n.net.start_ping(p);
  n.engine.run_until(SimTime::from_s(60));
  EXPECT_GE(n.net.rtt(idx).max_consecutive_timeouts(SimTime{}, SimTime::from_s(20)), 5u);
  const auto c = n.net.total_link_counters();
  EXPECT_EQ(c.enqueued, c.delivered + c.dropped + c.in_flight());
}

TEST(RttSeries, CsvRoundTripAndCounts) {
  RttSeries s;
  s.probes = {{SimTime::from_s(1), SimTime::from_us(500)},
              {SimTime::from_s(2), std::nullopt},
              {SimTime::from_s(3), std::nullopt},
              {SimTime::from_s(4), SimTime::from_us(700)}};
  EXPECT_EQ(s.timeouts(), 2u);
  EXPECT_EQ(s.max_consecutive_timeouts(SimTime{}, SimTime::from_s(10)), 2u);
  EXPECT_EQ(s.max_consecutive_timeouts(SimTime::from_s(3), SimTime::from_s(10)), 1u);
  const auto text = s.to_csv();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t_sent_us,rtt_us_or_TIMEOUT");
  const auto back = RttSeries::from_csv(text);
  ASSERT_EQ(back.probes.size(), 4u);
  EXPECT_EQ(back.to_csv(), text);
}

TEST(RttSeries, RejectsMalformedRows) {
  EXPECT_THROW(RttSeries::from_csv("bad\n"), ParseError);
  EXPECT_THROW(RttSeries::from_csv("t_sent_us,rtt_us_or_TIMEOUT\n5,x\n"), ParseError);
  EXPECT_THROW(RttSeries::from_csv("t_sent_us,rtt_us_or_TIMEOUT\n5,1\n4,1\n"), ParseError);
}

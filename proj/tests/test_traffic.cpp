#include <gtest/gtest.h>

#include "sdsn/core/error.hpp"
#include "sdsn/core/rng.hpp"
#include "sdsn/sim/topology.hpp"
#include "sdsn/traffic/generator.hpp"
#include "sdsn/traffic/profile.hpp"

using namespace sdsn;
using namespace sdsn::traffic;

TEST(Profile, ClassIntervals) {
  EXPECT_EQ(payload_range(PayloadClass::small).lo, 100);
  EXPECT_EQ(payload_range(PayloadClass::large).hi, 99999);
  EXPECT_EQ(rate_range(SpeedClass::moderate).lo, 101);
  EXPECT_EQ(rate_range(SpeedClass::fast).hi, 10000);
}

TEST(Profile, ClassifyAndParse) {
  EXPECT_EQ(classify_payload(999), PayloadClass::small);
  EXPECT_EQ(classify_payload(1000), PayloadClass::medium);
  EXPECT_EQ(classify_payload(5e6), PayloadClass::large);
  EXPECT_EQ(classify_speed(0.5), SpeedClass::low);
  EXPECT_EQ(classify_speed(1000.5), SpeedClass::moderate);
  EXPECT_EQ(classify_speed(1001), SpeedClass::fast);
  EXPECT_EQ(parse_payload_class("medium"), PayloadClass::medium);
  EXPECT_FALSE(parse_speed_class("warp").has_value());
  EXPECT_STREQ(to_string(SpeedClass::fast), "fast");
}

TEST(Rng, UniformIntStaysInBoundsAndIsDeterministic) {
  Rng a(5), b(5);
  for (int i = 0; i < 10000; ++i) {
    const auto x = a.uniform_int(-3, 7);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 7);
    EXPECT_EQ(x, b.uniform_int(-3, 7));
  }
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
}

TEST(Generator, ConstantGapSchedule) {
  FlowGenerator g({PayloadClass::small, SpeedClass::low, 9}, SimTime::from_s(2), SimTime::from_s(4));
  const auto rate = g.rate_pps();
  std::int64_t k = 0;
  while (auto ev = g.next()) {
    EXPECT_EQ(ev->first.ns(), SimTime::from_s(2).ns() + k * 1'000'000'000 / rate);
    ++k;
  }
  EXPECT_EQ(k, 2 * rate);
}

TEST(Generator, SampleFlowRejectsEmptyWindow) {
  EXPECT_THROW(sample_flow({}, 0, 1, SimTime{}), std::invalid_argument);
}

// Every payload and rate falls inside its class, for every one of the nine
// classes, over at least 10^4 draws each.
TEST(ClassIntervalProperty, AllDrawsInsideTheirClass) {
  for (auto p : kPayloadClasses) {
    for (auto s : kSpeedClasses) {
      std::size_t payloads = 0, rates = 0;
      for (std::uint64_t seed = 0; payloads < 10000 || rates < 10000; ++seed) {
        TrafficProfile prof{p, s, mix_seed(1234, seed)};
        FlowGenerator g(prof, SimTime{}, SimTime::from_ms(200));
        ASSERT_TRUE(prof.rate().contains(static_cast<double>(g.rate_pps())));
        ++rates;
        while (auto ev = g.next()) {
          ASSERT_TRUE(prof.payload().contains(ev->second)) << ev->second;
          ++payloads;
        }
      }
    }
  }
}

TEST(Attack, OneLabelledFlowPerBotWithDistinctSeeds) {
  const auto t = sim::Topology::build(sim::test_preset());
  AttackScenario a;
  a.target = t.require("h1");
  a.bot_sources = {t.require("h3"), t.require("h5")};
  a.profile = {PayloadClass::small, SpeedClass::fast, 77};
  a.start = SimTime::from_s(1);
  a.stop = SimTime::from_s(2);
  const auto flows = attack_flows(a, t, 10);
  ASSERT_EQ(flows.size(), 2u);
  EXPECT_EQ(flows[0].id, 10u);
  EXPECT_EQ(flows[1].label, 1);
  EXPECT_NE(flows[0].profile.seed, flows[1].profile.seed);

  const auto events = build_attack(a, t);
  for (std::size_t i = 1; i < events.size(); ++i) {
    EXPECT_TRUE(events[i - 1].at < events[i].at ||
                (events[i - 1].at == events[i].at && events[i - 1].flow <= events[i].flow));
  }
  for (const auto& e : events) {
    EXPECT_GE(e.at, a.start);
    EXPECT_LT(e.at, a.stop);
  }
}

TEST(Attack, ValidatesNodes) {
  const auto t = sim::Topology::build(sim::test_preset());
  AttackScenario a;
  a.target = t.require("h1");
  EXPECT_THROW(attack_flows(a, t, 0), ConfigError);
  a.bot_sources = {t.require("h1")};
  EXPECT_THROW(attack_flows(a, t, 0), ConfigError);
  a.bot_sources = {t.require("s1")};
  EXPECT_THROW(attack_flows(a, t, 0), ConfigError);
}

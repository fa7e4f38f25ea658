#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "sdsn/core/error.hpp"
#include "sdsn/harness/logs.hpp"
#include "sdsn/monitor/baseline.hpp"
#include "sdsn/monitor/dataset.hpp"
#include "sdsn/monitor/features.hpp"
#include "sdsn/monitor/testbed.hpp"

using namespace sdsn;
using namespace sdsn::monitor;

namespace {

FlowStatsRecord rec(double t, std::uint64_t pk, std::uint64_t by, double installed = 0.0) {
  FlowStatsRecord r;
  r.polled_at = SimTime::from_s(t);
  r.switch_id = 1;
  r.key = {{1}, {2}};
  r.pckt_count = pk;
  r.byte_count = by;
  r.installed_at = SimTime::from_s(installed);
  r.duration_s = t - installed;
  return r;
}

}  // namespace

TEST(Featurize, RatesFromCounterDeltas) {
  const std::vector<FlowStatsRecord> w = {rec(1, 50, 50000), rec(2, 150, 150000)};
  const auto f = featurize(w, 1, 1);
  ASSERT_TRUE(f);
  EXPECT_DOUBLE_EQ(f->pckt_rate, 100);
  EXPECT_DOUBLE_EQ(f->byte_rate, 100000);
  EXPECT_DOUBLE_EQ(f->mean_pckt_size, 1000);
  EXPECT_DOUBLE_EQ(f->flow_duration, 2);
}

TEST(Featurize, SinglePollIsAPreconditionViolation) {
  const std::vector<FlowStatsRecord> w = {rec(1, 50, 50000)};
  EXPECT_THROW(featurize(w, 1, 1), std::invalid_argument);
}

TEST(Featurize, RecycledEntryYieldsNothing) {
  const std::vector<FlowStatsRecord> dec = {rec(1, 50, 500), rec(2, 10, 100)};
  EXPECT_FALSE(featurize(dec, 1, 1).has_value());
  const std::vector<FlowStatsRecord> reinstalled = {rec(1, 50, 500), rec(2, 60, 600, 1.5)};
  EXPECT_FALSE(featurize(reinstalled, 1, 1).has_value());
}

TEST(FeatureVector, ArrayRoundTrip) {
  FeatureVector f{1, 2, 3, 4, 5, 6};
  const auto a = f.to_array();
  EXPECT_EQ(FeatureVector::from_array(a), f);
  const std::vector<double> short_v = {1, 2};
  EXPECT_THROW(FeatureVector::from_array(short_v), std::invalid_argument);
}

TEST(PollCycle, EmptyAndPopulated) {
  const auto t = sim::Topology::build(sim::test_preset());
  control::Controller c(t);
  EXPECT_TRUE(poll_cycle(c, SimTime::from_s(1)).empty());
  std::uint64_t m = 100;
  for (auto sw : t.switches())
    for (int i = 0; i < 2; ++i) c.table(sw).install({{{m++}, {1}}, 0, SimTime{}, 0, 0, SimTime{}});
  const auto recs = poll_cycle(c, SimTime::from_s(1));
  EXPECT_EQ(recs.size(), 6u);
  for (const auto& r : recs) EXPECT_EQ(r.polled_at, SimTime::from_s(1));
}

TEST(Testbed, FiveBotsGiveFanInFiveAndSoundLabels) {
  Testbed bed(sim::test_preset());
  const auto& t = bed.topology();
  traffic::AttackScenario a;
  a.target = t.require("h1");
  for (const char* b : {"h3", "h4", "h5", "h6", "sn1"}) a.bot_sources.push_back(t.require(b));
  a.profile = {traffic::PayloadClass::small, traffic::SpeedClass::moderate, 3};
  a.start = SimTime::from_s(0.5);
  a.stop = SimTime::from_s(8);
  for (const auto& f : traffic::attack_flows(a, t, 0)) bed.add_flow(f);
  traffic::FlowSpec normal{10, t.require("sn2"), t.require("h2"), {traffic::PayloadClass::small, traffic::SpeedClass::low, 4},
                           SimTime{}, SimTime::from_s(8), 0};
  bed.add_flow(normal);

  std::map<FlowKey, std::uint64_t> last_count;
  bool monotone = true;
  std::size_t attack_vectors = 0;
  bed.run(SimTime::from_s(8), [&](SimTime, const std::vector<FlowStatsRecord>& records,
                                  const std::vector<FlowVector>& vectors) {
    for (const auto& r : records) {
      auto& prev = last_count[r.key];
      if (r.switch_id == t.attachment_switch(*t.find_by_mac(r.key.eth_src))) {
        if (r.pckt_count < prev) monotone = false;
        prev = r.pckt_count;
      }
    }
    for (const auto& v : vectors) {
      const auto label = bed.label_of(v.key);
      ASSERT_TRUE(label.has_value());
      if (*label == 1) {
        ++attack_vectors;
        EXPECT_EQ(v.features.dst_fanin, 5);
      }
      // mean size times packet rate reproduces the byte rate
      EXPECT_NEAR(v.features.mean_pckt_size * v.features.pckt_rate, v.features.byte_rate,
                  1e-9 * v.features.byte_rate + 1e-9);
    }
  });
  EXPECT_TRUE(monotone);
  EXPECT_GT(attack_vectors, 0u);
}

TEST(Testbed, ConflictingGroundTruthIsRejected) {
  Testbed bed(sim::test_preset());
  const auto& t = bed.topology();
  traffic::FlowSpec f{0, t.require("h3"), t.require("h1"), {}, SimTime{}, SimTime::from_s(1), 0};
  bed.add_flow(f);
  f.label = 1;
  EXPECT_THROW(bed.add_flow(f), ConfigError);
}

TEST(DatasetCsv, RoundTripThousandSamples) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0, 1e6);
  Dataset d;
  for (int i = 0; i < 1000; ++i)
    d.samples.push_back({{u(gen), u(gen), u(gen), u(gen), std::floor(u(gen) / 1e5), 1.0}, static_cast<int>(gen() % 2)});
  const auto text = to_csv(d);
  EXPECT_EQ(text.substr(0, text.find('\n')), kDatasetHeader);
  EXPECT_EQ(parse_csv(text, "mem"), d);
  const auto path = (std::filesystem::temp_directory_path() / "sdsn_roundtrip.csv").string();
  export_csv(d, path);
  EXPECT_EQ(load_csv(path), d);
  std::filesystem::remove(path);
}

TEST(DatasetCsv, Errors) {
  EXPECT_THROW(export_csv(Dataset{}, "/tmp/never.csv"), RuntimeError);
  try {
    parse_csv("a,b,c\n", "x.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":1"), std::string::npos) << e.what();
  }
  try {
    parse_csv(std::string(kDatasetHeader) + "\n1,2,3,4,5,6,0\n1,2,x,4,5,6,1\n", "x.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_csv(std::string(kDatasetHeader) + "\n1,2,3,4,5,6,2\n", "x.csv"), ParseError);
}

TEST(Baseline, CellIndexing) {
  std::set<std::size_t> seen;
  for (auto p : traffic::kPayloadClasses)
    for (auto s : traffic::kSpeedClasses) {
      const auto i = cell_index(p, s);
      EXPECT_EQ(cell_classes(i), std::make_pair(p, s));
      seen.insert(i);
    }
  EXPECT_EQ(seen.size(), kCellCount);
  EXPECT_EQ(baseline_file_name(traffic::PayloadClass::large, traffic::SpeedClass::low), "baseline_large_low.csv");
}

TEST(Baseline, NormalEndpointsRespectFanInCap) {
  BaselineConfig c;
  const auto eps = normal_flow_endpoints(c);
  EXPECT_EQ(eps.size(), c.normal_flows);
  std::map<std::string, int> fanin;
  for (const auto& [s, d] : eps) {
    EXPECT_NE(d, c.target);
    EXPECT_NE(d, c.ping_source);
    ++fanin[d];
  }
  for (const auto& [d, n] : fanin) EXPECT_LE(n, static_cast<int>(c.max_normal_fanin));
  c.normal_flows = 50;
  EXPECT_THROW(normal_flow_endpoints(c), ConfigError);
}

class BaselineSetTest : public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    BaselineConfig c;
    c.duration_s = 30;
    set_ = new BaselineSet(build_baseline_datasets(c));
  }
  static void TearDownTestSuite() { delete set_; }
  static BaselineSet* set_;
};
BaselineSet* BaselineSetTest::set_ = nullptr;

TEST_F(BaselineSetTest, NineBothLabelCellsWithBalancedMinority) {
  for (const auto& d : *set_) {
    ASSERT_TRUE(d.has_both_labels());
    const double minority =
        static_cast<double>(std::min(d.count_label(0), d.count_label(1))) / static_cast<double>(d.size());
    EXPECT_GE(minority, 0.10);
    ASSERT_TRUE(d.provenance.has_value());
  }
}

TEST_F(BaselineSetTest, WriteLoadAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path() / "sdsn_baseline_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_baseline(*set_, (dir / "nested").string());
  EXPECT_EQ(paths.size(), 9u);
  const auto loaded = load_baseline((dir / "nested").string());
  for (std::size_t i = 0; i < kCellCount; ++i) EXPECT_EQ(loaded[i], (*set_)[i]);

  BaselineConfig c;
  c.duration_s = 30;
  const auto again = capture_cell(c, traffic::PayloadClass::medium, traffic::SpeedClass::fast);
  EXPECT_EQ(to_csv(again), to_csv((*set_)[cell_index(traffic::PayloadClass::medium, traffic::SpeedClass::fast)]));

  std::filesystem::remove(dir / "nested" / "baseline_small_low.csv");
  try {
    load_baseline((dir / "nested").string());
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_NE(std::string(e.what()).find("baseline_small_low.csv"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

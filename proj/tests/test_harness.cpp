#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sdsn/core/error.hpp"
#include "sdsn/harness/commands.hpp"
#include "sdsn/harness/config.hpp"
#include "sdsn/harness/logs.hpp"
#include "sdsn/harness/scenario.hpp"

using namespace sdsn;
using namespace sdsn::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json default_json() { return json::parse(read_file(std::string(SDSN_CONFIG_DIR) + "/default.json")); }

// 40 s scenario with a 10-25 s attack.
json short_json(const std::string& mode) {
  auto j = default_json();
  j["duration_s"] = 40;
  j["attacks"][0]["start_s"] = 10;
  j["attacks"][0]["stop_s"] = 25;
  j["defense"]["mode"] = mode;
  j["automl"]["buffer_s"] = 60;
  j["baseline"]["duration_s"] = 20;
  return j;
}

std::string config_error(const json& j) {
  try {
    parse_config(j.dump(), "test.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("sdsn_harness_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, DefaultLoads) {
  const auto c = load_config(std::string(SDSN_CONFIG_DIR) + "/default.json");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.defense.mode, DefenseMode::automl);
  EXPECT_EQ(c.attacks.size(), 1u);
  ASSERT_TRUE(c.ping);
  EXPECT_DOUBLE_EQ(c.ping->stop_s, 140.0);
  EXPECT_EQ(c.attack_window(), std::make_pair(30.0, 90.0));
  EXPECT_EQ(c.normal_flows[0].stop_s, 150.0);
  EXPECT_NE(c.flow_seed(0), c.flow_seed(1));
  EXPECT_NE(c.flow_seed(0), c.attack_seed(0));
  const auto b = c.baseline_config();
  EXPECT_EQ(b.seed, 7u);
}

TEST(Config, ErrorsNameTheField) {
  auto j = default_json();
  j.erase("seed");
  EXPECT_NE(config_error(j).find("seed"), std::string::npos);

  j = default_json();
  j["attacks"][0]["speed_class"] = "warp";
  EXPECT_NE(config_error(j).find("attacks[0].speed_class"), std::string::npos);

  j = default_json();
  j["topology"]["access"]["capacity_pps"] = 0;
  EXPECT_NE(config_error(j).find("topology.access.capacity_pps"), std::string::npos);

  j = default_json();
  j["defense"]["colour"] = "red";
  EXPECT_NE(config_error(j).find("defense.colour"), std::string::npos);

  j = default_json();
  j["automl"]["buffer_s"] = 30;
  EXPECT_NE(config_error(j).find("buffer"), std::string::npos);

  j = default_json();
  j["normal_flows"][1]["dst"] = "h99";
  EXPECT_NE(config_error(j).find("h99"), std::string::npos);

  j = default_json();
  j["attacks"][0]["stop_s"] = 500;
  EXPECT_FALSE(config_error(j).empty());

  EXPECT_THROW(parse_config("{not json", "x.json"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ModeNames) {
  for (auto m : {DefenseMode::none, DefenseMode::greedy, DefenseMode::automl})
    EXPECT_EQ(parse_defense_mode(to_string(m)), m);
  EXPECT_FALSE(parse_defense_mode("firewall"));
}

TEST(Logs, SelectionAndDetectionRoundTrip) {
  std::vector<SelectionRow> s = {{1.0, ml::AlgorithmId::knn, 0.987654321, 1.25e-6, 0.91, true},
                                 {1.0, ml::AlgorithmId::linear_svm, 0.5, 3e-7, 0.65, false}};
  EXPECT_EQ(selection_from_csv(selection_to_csv(s), "sel"), s);
  std::vector<DetectionRow> d = {{SimTime::from_s(3), {{1}, {2}}, 1, 1}, {SimTime::from_s(4), {{1}, {3}}, 0, {}}};
  EXPECT_EQ(detections_from_csv(detections_to_csv(d), "det"), d);
  EXPECT_THROW(selection_from_csv("bad header\n", "sel"), ParseError);
}

TEST(Logs, SummaryCsvAndLookup) {
  Summary s = {{"mode", "greedy"}, {"timeouts", "3"}};
  const auto back = summary_from_csv(summary_to_csv(s), "s");
  EXPECT_EQ(back, s);
  EXPECT_EQ(summary_value(back, "timeouts"), "3");
  EXPECT_FALSE(summary_value(back, "alerts"));
}

TEST(Scenario, GreedyRunIsDeterministic) {
  const auto c = parse_config(short_json("greedy").dump(), "short");
  const auto a = run_scenario(c);
  const auto b = run_scenario(c);
  EXPECT_EQ(a.summary, b.summary);
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.alerts.entries, b.alerts.entries);
  EXPECT_EQ(a.detections, b.detections);
  EXPECT_GT(a.alerts.count(defense::AlertAction::del), 0u);
  EXPECT_EQ(a.audit.holddown_forwards, 0u);
  EXPECT_EQ(a.audit.collateral_deletes, 0u);
}

TEST(Scenario, SeedChangesTraffic) {
  auto j = short_json("none");
  const auto a = run_scenario(parse_config(j.dump(), "a"));
  j["seed"] = 8;
  const auto b = run_scenario(parse_config(j.dump(), "b"));
  EXPECT_NE(a.events, b.events);
}

TEST(Scenario, AutomlRunSelectsAndMitigates) {
  const auto r = run_scenario(parse_config(short_json("automl").dump(), "automl"));
  EXPECT_GE(r.selection.size(), 6u);
  std::size_t selected = 0;
  for (const auto& row : r.selection) selected += row.selected;
  EXPECT_EQ(selected * 6, r.selection.size());
  EXPECT_GT(r.alerts.count(defense::AlertAction::alert), 0u);
  EXPECT_EQ(summary_value(r.summary, "mode"), "automl");
  EXPECT_NE(summary_value(r.summary, "final_algorithm"), "NA");
  EXPECT_EQ(r.audit.holddown_forwards, 0u);
}

TEST(Report, RecomputesAndDetectsTampering) {
  auto j = short_json("greedy");
  const auto dir = scratch("report");
  j["output_dir"] = dir.string();
  run_and_write(parse_config(j.dump(), "r"));
  for (const char* f : {"rtt.csv", "selection_log.csv", "alerts.csv", "detections.csv", "flow_table.csv",
                        "summary.csv", "run.log"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const auto text = cmd_report(dir.string());
  EXPECT_NE(text.find("timeouts"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "plot_rtt.csv"));
  EXPECT_TRUE(fs::exists(dir / "plot_phases.csv"));

  // drop the last alert row; the recomputed counts no longer match
  auto alerts = read_file((dir / "alerts.csv").string());
  ASSERT_GT(alerts.size(), 2u);
  alerts.pop_back();
  alerts.erase(alerts.rfind('\n') + 1);
  write_file((dir / "alerts.csv").string(), alerts);
  EXPECT_THROW(cmd_report(dir.string()), IntegrityError);
  fs::remove_all(dir);
}

TEST(Commands, GenDataThenTrainEval) {
  auto j = default_json();
  j["baseline"]["duration_s"] = 20;
  j["train_eval"]["timing"] = "work";
  j["train_eval"]["timing_repeats"] = 1;
  const auto dir = scratch("gendata");
  j["output_dir"] = dir.string();
  const auto c = parse_config(j.dump(), "g");
  EXPECT_EQ(cmd_gen_data(c).size(), 9u);
  const auto rows = cmd_train_eval(c);
  EXPECT_EQ(rows.size(), 54u);
  const auto back = evaluation_from_csv(read_file((dir / "evaluation.csv").string()), "e");
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].dataset, rows[i].dataset);
    EXPECT_EQ(back[i].evaluation.algorithm, rows[i].evaluation.algorithm);
    EXPECT_DOUBLE_EQ(back[i].evaluation.accuracy, rows[i].evaluation.accuracy);
    EXPECT_GT(rows[i].evaluation.detection_time_s, 0.0);
  }
  fs::remove_all(dir);
}

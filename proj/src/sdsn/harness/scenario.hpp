#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdsn/harness/config.hpp"
#include "sdsn/harness/logs.hpp"

namespace sdsn::harness {

/// Live checks made while the scenario runs.
struct Audit {
  /// Packets a switch forwarded for a key while that key was held down.
  std::uint64_t holddown_forwards = 0;
  /// Flow entries deleted for keys that were never alerted.
  std::uint64_t collateral_deletes = 0;
  std::uint64_t mitigated_keys = 0;
  std::uint64_t forwards_total = 0;
  std::uint64_t packet_ins = 0;
};

struct RunResult {
  sim::RttSeries rtt;
  std::vector<SelectionRow> selection;
  defense::AlertLog alerts;
  std::vector<DetectionRow> detections;
  std::vector<std::pair<std::string, control::FlowStatsRecord>> final_flows;
  std::vector<std::string> log;  // "t_s message" lines
  Audit audit;
  Summary summary;
  std::uint64_t events = 0;
};

/// Runs the configured scenario in memory.
RunResult run_scenario(const ScenarioConfig& config);

/// Runs and writes rtt.csv, selection_log.csv, alerts.csv, detections.csv,
/// flow_table.csv, audit.csv, run.log and summary.csv under output_dir.
RunResult run_and_write(const ScenarioConfig& config);

/// Nine baseline datasets merged in cell order.
monitor::Dataset bootstrap_dataset(const ScenarioConfig& config);

}  // namespace sdsn::harness

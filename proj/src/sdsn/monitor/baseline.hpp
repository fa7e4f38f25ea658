#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdsn/monitor/dataset.hpp"
#include "sdsn/monitor/testbed.hpp"
#include "sdsn/sim/topology.hpp"
#include "sdsn/traffic/profile.hpp"

namespace sdsn::monitor {

/// How each of the nine payload x speed captures is run. Normal flows and the
/// attack both draw from the cell's classes; what separates them is that
/// the bots all converge on one target.
struct BaselineConfig {
  sim::TopologySpec topology = sim::test_preset();
  std::string target = "h1";
  std::vector<std::string> bots = {"h3", "h5"};
  std::string ping_source = "h6";
  std::size_t normal_flows = 4;
  /// Cap on normal flows sharing one destination.
  std::size_t max_normal_fanin = 2;
  double duration_s = 60.0;
  double attack_start_s = 5.0;
  std::uint64_t seed = 7;
  TestbedParams testbed;
};

inline constexpr std::size_t kCellCount = 9;
using BaselineSet = std::array<Dataset, kCellCount>;

/// Cell index: payload-major, speed-minor.
std::size_t cell_index(traffic::PayloadClass p, traffic::SpeedClass s);
std::pair<traffic::PayloadClass, traffic::SpeedClass> cell_classes(std::size_t index);

/// Normal flow endpoints shared by every cell, drawn from the config seed.
std::vector<std::pair<std::string, std::string>> normal_flow_endpoints(const BaselineConfig& config);

/// Runs one cell's capture. Throws RuntimeError if the capture is single-label.
Dataset capture_cell(const BaselineConfig& config, traffic::PayloadClass p, traffic::SpeedClass s);
BaselineSet build_baseline_datasets(const BaselineConfig& config);

/// Writes baseline_<payload>_<speed>.csv for every cell, creating `dir`.
std::vector<std::string> write_baseline(const BaselineSet& set, const std::string& dir);
/// Throws RuntimeError listing every missing file.
BaselineSet load_baseline(const std::string& dir);

}  // namespace sdsn::monitor

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdsn/automl/selector.hpp"
#include "sdsn/ml/algorithm.hpp"
#include "sdsn/ml/evaluate.hpp"
#include "sdsn/monitor/baseline.hpp"
#include "sdsn/sim/topology.hpp"
#include "sdsn/traffic/profile.hpp"

namespace sdsn::harness {

enum class DefenseMode { none, greedy, automl };
const char* to_string(DefenseMode m);
std::optional<DefenseMode> parse_defense_mode(const std::string& s);

struct TopologyConfig {
  std::string preset = "test";  // test | minimal | scaling
  std::size_t sensors = 100;    // scaling preset only
  sim::PresetLinkParams links;
};

struct FlowConfig {
  std::string src;
  std::string dst;
  traffic::PayloadClass payload_class = traffic::PayloadClass::small;
  traffic::SpeedClass speed_class = traffic::SpeedClass::low;
  double start_s = 0.0;
  double stop_s = 0.0;
  std::optional<std::uint64_t> seed;  // default: derived from the scenario seed
};

struct AttackConfig {
  std::string target;
  std::vector<std::string> bots;
  traffic::PayloadClass payload_class = traffic::PayloadClass::small;
  traffic::SpeedClass speed_class = traffic::SpeedClass::fast;
  double start_s = 0.0;
  double stop_s = 0.0;
  std::optional<std::uint64_t> seed;
};

struct PingConfig {
  std::string src;
  std::string dst;
  double interval_s = 1.0;
  double timeout_s = 10.0;
  double start_s = 1.0;
  double stop_s = 0.0;  // defaults to duration - timeout
  std::uint32_t payload = 64;
};

struct DefenseConfig {
  DefenseMode mode = DefenseMode::automl;
  double hold_down_s = 30.0;
  double greedy_threshold_pps = 1000.0;
  double greedy_hold_down_s = 15.0;
};

struct AutomlConfig {
  double buffer_s = 120.0;
  automl::WeightPair weights;
  bool per_state_weights = false;
  /// Directory of the nine baseline CSVs; empty generates them in memory.
  std::string baseline_dir;
  std::uint64_t split_seed = 1;
  ml::TimingMode timing = ml::TimingMode::work;
  std::size_t timing_repeats = 1;
  ml::Hyperparameters hyperparameters;
};

struct TrainEvalConfig {
  std::string datasets_dir;  // empty: <output_dir>
  ml::TimingMode timing = ml::TimingMode::wall;
  std::size_t timing_repeats = 5;
  std::uint64_t split_seed = 1;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  TopologyConfig topology;
  double duration_s = 150.0;
  double poll_interval_s = 1.0;
  std::size_t window_polls = 3;
  std::vector<FlowConfig> normal_flows;
  std::vector<AttackConfig> attacks;
  std::optional<PingConfig> ping;
  DefenseConfig defense;
  AutomlConfig automl;
  /// Baseline capture settings; topology and seed are filled in by
  /// baseline_config().
  monitor::BaselineConfig baseline;
  std::optional<std::uint64_t> baseline_seed;
  TrainEvalConfig train_eval;
  std::string output_dir = "out";

  sim::TopologySpec topology_spec() const;
  monitor::BaselineConfig baseline_config() const;
  std::uint64_t flow_seed(std::size_t index) const;
  std::uint64_t attack_seed(std::size_t index) const;
  /// Earliest attack start and latest attack stop; nullopt without attacks.
  std::optional<std::pair<double, double>> attack_window() const;
};

/// Parses JSON text. Throws ConfigError whose message starts with the
/// offending field path, e.g. "defense.mode: unknown value 'x'".
ScenarioConfig parse_config(const std::string& json_text, const std::string& source);
ScenarioConfig load_config(const std::string& path);

/// Cross-field checks, run again after command-line overrides.
void validate(const ScenarioConfig& config);

}  // namespace sdsn::harness

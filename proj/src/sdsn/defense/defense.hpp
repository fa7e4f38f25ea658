#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdsn/control/controller.hpp"
#include "sdsn/ml/classifier.hpp"
#include "sdsn/monitor/features.hpp"
#include "sdsn/sim/engine.hpp"

namespace sdsn::defense {

using control::FlowKey;

struct AlertEvent {
  SimTime at;
  FlowKey key;
  monitor::Label predicted_label = 1;
  std::string model;  // algorithm name, or "greedy"
  monitor::FeatureVector features;
};

enum class AlertAction { alert, del, readmit };
const char* to_string(AlertAction a);

struct AlertLogEntry {
  SimTime at;
  FlowKey key;
  std::string model;
  AlertAction action = AlertAction::alert;
  bool operator==(const AlertLogEntry&) const = default;
};

inline constexpr const char* kAlertLogHeader = "t_s,eth_src,eth_dst,model,action";

struct AlertLog {
  std::vector<AlertLogEntry> entries;

  void add(SimTime at, const FlowKey& key, std::string model, AlertAction action) {
    entries.push_back({at, key, std::move(model), action});
  }
  std::size_t count(AlertAction a) const;
  std::string to_csv() const;
  /// Throws ParseError naming the line.
  static AlertLog from_csv(const std::string& text, const std::string& source);
};

/// One predict per vector; alerts for predicted label 1. A null model
/// yields no alerts and sets `warning` when given.
std::vector<AlertEvent> detect_tick(const ml::TrainedModel* model, const std::vector<monitor::FlowVector>& vectors,
                                    SimTime now, std::string* warning = nullptr);

/// Threshold rule on per-entry packet-counter deltas between two polls.
/// Each key alerts at most once per call. Throws std::invalid_argument when
/// threshold_pps <= 0.
std::vector<AlertEvent> greedy_detect(const std::vector<control::FlowStatsRecord>& previous,
                                      const std::vector<control::FlowStatsRecord>& current, double threshold_pps);

struct MitigationAction {
  FlowKey key;
  std::vector<sim::NodeId> deleted_on;
  SimTime hold_until;
  bool extended = false;  // key was already held
};

/// Deletes alerted flows on every switch holding them and holds the key
/// down. A READMIT row is logged when a hold-down expires unextended.
class Mitigator {
public:
  Mitigator(control::Controller& controller, sim::Engine& engine, AlertLog& log, SimTime hold_down);

  MitigationAction mitigate(const AlertEvent& alert);
  /// Keys ever mitigated, for audits.
  const std::map<FlowKey, SimTime>& mitigated() const { return expiry_; }

private:
  control::Controller* controller_;
  sim::Engine* engine_;
  AlertLog* log_;
  SimTime hold_down_;
  std::map<FlowKey, SimTime> expiry_;
};

}  // namespace sdsn::defense

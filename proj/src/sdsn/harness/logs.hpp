#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdsn/control/flow_table.hpp"
#include "sdsn/defense/defense.hpp"
#include "sdsn/ml/algorithm.hpp"
#include "sdsn/sim/rtt.hpp"

namespace sdsn::harness {

/// One row per algorithm per selection cycle.
struct SelectionRow {
  double cycle_t_s = 0.0;
  ml::AlgorithmId algorithm = ml::AlgorithmId::decision_tree;
  double accuracy = 0.0;
  double detection_time_s = 0.0;
  double total_score = 0.0;
  bool selected = false;
  bool operator==(const SelectionRow&) const = default;
};

inline constexpr const char* kSelectionHeader = "cycle_t_s,algorithm,accuracy,detection_time_s,total_score,selected";
std::string selection_to_csv(const std::vector<SelectionRow>& rows);
std::vector<SelectionRow> selection_from_csv(const std::string& text, const std::string& source);

/// Live classification of one flow vector. `predicted` is empty when no
/// detector judged the vector (defense off, or no model yet).
struct DetectionRow {
  SimTime at;
  control::FlowKey key;
  monitor::Label label = 0;
  std::optional<monitor::Label> predicted;
  bool operator==(const DetectionRow&) const = default;
};

inline constexpr const char* kDetectionHeader = "t_s,eth_src,eth_dst,label,predicted";
std::string detections_to_csv(const std::vector<DetectionRow>& rows);
std::vector<DetectionRow> detections_from_csv(const std::string& text, const std::string& source);

inline constexpr const char* kFlowTableHeader = "switch_id,eth_src,eth_dst,pckt_count,byte_count,duration_s";
std::string flow_table_to_csv(const std::vector<std::pair<std::string, control::FlowStatsRecord>>& rows);

/// Ordered key/value pairs.
using Summary = std::vector<std::pair<std::string, std::string>>;
std::string summary_to_csv(const Summary& s);
Summary summary_from_csv(const std::string& text, const std::string& source);
std::optional<std::string> summary_value(const Summary& s, const std::string& key);

/// Inputs that the summary copies from the scenario rather than deriving.
struct SummaryContext {
  std::string mode;
  double duration_s = 0.0;
  std::optional<std::pair<double, double>> attack_window;
};

/// Everything derived from the raw logs. Recomputing from re-read files
/// must reproduce it exactly.
Summary compute_summary(const SummaryContext& ctx, const sim::RttSeries& rtt, const defense::AlertLog& alerts,
                        const std::vector<DetectionRow>& detections, const std::vector<SelectionRow>& selection);

/// Reads the context keys back out of a stored summary.
SummaryContext summary_context(const Summary& s, const std::string& source);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sdsn::harness

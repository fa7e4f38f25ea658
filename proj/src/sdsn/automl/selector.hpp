#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdsn/core/time.hpp"
#include "sdsn/ml/evaluate.hpp"
#include "sdsn/monitor/features.hpp"
#include "sdsn/traffic/profile.hpp"

namespace sdsn::automl {

struct WeightPair {
  double alpha = 0.7;  // accuracy weight
  double beta = 0.3;   // speed weight
  bool operator==(const WeightPair&) const = default;
};

/// One (alpha, beta) per algorithm, indexed by index_of(id) - 1.
struct SelectionWeights {
  std::array<WeightPair, 6> per_algorithm;

  static SelectionWeights uniform(WeightPair w);
  const WeightPair& of(ml::AlgorithmId id) const { return per_algorithm[index_of(id) - 1]; }
  WeightPair& of(ml::AlgorithmId id) { return per_algorithm[index_of(id) - 1]; }
  /// Throws std::invalid_argument for negative, non-finite or all-zero pairs.
  void validate() const;
  bool operator==(const SelectionWeights&) const = default;
};

struct ModelScore {
  ml::AlgorithmId algorithm = ml::AlgorithmId::decision_tree;
  double accuracy = 0.0;
  double detection_time_s = 0.0;
  double speed_score = 0.0;
  double total = 0.0;
};

/// speed = (B_max - B_i) / (B_max - B_min), 1 for all when every B is equal.
/// Throws std::invalid_argument for an empty batch or a repeated algorithm.
std::vector<ModelScore> score_batch(const std::vector<ml::Evaluation>& evals, const SelectionWeights& weights);

/// Highest total; equal totals go to the smaller algorithm index.
ml::AlgorithmId select(const std::vector<ModelScore>& scores);

struct BufferSchedule {
  static constexpr double kMinPeriod = 60.0;
  static constexpr double kMaxPeriod = 300.0;
  double period_s = 120.0;

  /// Throws std::invalid_argument outside [60, 300].
  static BufferSchedule make(double period_s);
  SimTime period() const { return SimTime::from_s(period_s); }
};

/// Coarse traffic state used to pick per-state weights.
struct NetworkStateDescriptor {
  traffic::PayloadClass payload_class = traffic::PayloadClass::small;
  traffic::SpeedClass speed_class = traffic::SpeedClass::low;
  auto operator<=>(const NetworkStateDescriptor&) const = default;
};

std::string to_string(const NetworkStateDescriptor& s);

/// Classifies the median packet size and median packet rate of the live
/// vectors. Empty input yields nullopt.
std::optional<NetworkStateDescriptor> describe_traffic(const std::vector<monitor::FlowVector>& vectors);

struct SelectorParams {
  ml::Hyperparameters hyperparameters;
  double train_fraction = 0.7;
  std::uint64_t seed = 1;
  ml::TimingMode timing = ml::TimingMode::work;
  std::size_t timing_repeats = 1;
};

struct CycleResult {
  std::vector<ModelScore> scores;
  std::vector<ml::Evaluation> evaluations;
  ml::AlgorithmId winner = ml::AlgorithmId::decision_tree;
  std::shared_ptr<const ml::TrainedModel> model;
};

/// Split, train all six, evaluate, score, select. A single-label window
/// returns nullopt so the caller keeps its incumbent.
std::optional<CycleResult> reselect_cycle(const monitor::Dataset& window, const SelectionWeights& weights,
                                          const SelectorParams& params);

struct HistoryEntry {
  NetworkStateDescriptor state;
  std::vector<ml::Evaluation> batch;
};

struct CalibrationParams {
  bool per_state = false;
  WeightPair global;
  std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

struct CalibratedWeights {
  SelectionWeights global;
  std::map<NetworkStateDescriptor, SelectionWeights> per_state;

  /// Per-state weights when calibrated for `s`, else the global pair.
  const SelectionWeights& for_state(const std::optional<NetworkStateDescriptor>& s) const;
};

/// Per state, picks the grid pair whose induced winners have the highest
/// mean accuracy, then the lowest mean detection time, then the lowest
/// alpha, then the lowest beta. Throws std::invalid_argument on empty history.
CalibratedWeights calibrate_weights(const std::vector<HistoryEntry>& history, const CalibrationParams& params);

/// Current detector. Readers never see a partially replaced model.
class ModelSlot {
public:
  std::shared_ptr<const ml::TrainedModel> load() const { return std::atomic_load(&model_); }
  void store(std::shared_ptr<const ml::TrainedModel> m) { std::atomic_store(&model_, std::move(m)); }

private:
  std::shared_ptr<const ml::TrainedModel> model_;
};

}  // namespace sdsn::automl

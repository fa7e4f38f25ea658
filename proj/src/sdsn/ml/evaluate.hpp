#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "sdsn/ml/classifier.hpp"

namespace sdsn::ml {

/// Fraction of test samples whose predicted label equals the true label.
/// Exact for n <= 2^53. Throws std::invalid_argument on an empty set.
double accuracy(const TrainedModel& model, const monitor::Dataset& test);
double accuracy(const TrainedModel& model, const SampleMatrix& test);

/// Source of detection time. charge() is called with each prediction's
/// operation count so work-based clocks can advance deterministically.
class DetectionClock {
public:
  virtual ~DetectionClock() = default;
  virtual double now_s() = 0;
  virtual void charge(std::uint64_t ops) = 0;
  virtual std::string name() const = 0;
};

class WallClock final : public DetectionClock {
public:
  double now_s() override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
  }
  void charge(std::uint64_t) override {}
  std::string name() const override { return "wall"; }
};

/// One nanosecond per counted operation.
class WorkClock final : public DetectionClock {
public:
  double now_s() override { return static_cast<double>(ops_) * 1e-9; }
  void charge(std::uint64_t ops) override { ops_ += ops; }
  std::string name() const override { return "work"; }

private:
  std::uint64_t ops_ = 0;
};

/// Advances only when told to; for tests.
class ManualClock final : public DetectionClock {
public:
  double now_s() override { return t_; }
  void charge(std::uint64_t) override {}
  void advance(double s) { t_ += s; }
  std::string name() const override { return "manual"; }

private:
  double t_ = 0.0;
};

enum class TimingMode { wall, work };
std::unique_ptr<DetectionClock> make_clock(TimingMode mode);
const char* to_string(TimingMode mode);
std::optional<TimingMode> parse_timing(const std::string& s);

struct Evaluation {
  AlgorithmId algorithm = AlgorithmId::decision_tree;
  double accuracy = 0.0;          // A_i
  double detection_time_s = 0.0;  // B_i, always > 0
  std::size_t n_test = 0;
};

/// Smallest value reported for B; a clock that does not advance still
/// yields a positive detection time.
inline constexpr double kMinDetectionTime = 1e-9;

/// Predicts every test sample `repeats` times and keeps the fastest pass.
Evaluation evaluate(const TrainedModel& model, const SampleMatrix& test, DetectionClock& clock,
                    std::size_t repeats = 1);
Evaluation evaluate(const TrainedModel& model, const monitor::Dataset& test, DetectionClock& clock,
                    std::size_t repeats = 1);

/// Per-label shuffle (seeded) then the first round(frac * n_label) rows of
/// each label go to the training side.
std::pair<monitor::Dataset, monitor::Dataset> stratified_split(const monitor::Dataset& d, double train_fraction,
                                                               std::uint64_t seed);

}  // namespace sdsn::ml

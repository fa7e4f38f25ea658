#include "sdsn/ml/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdsn/core/rng.hpp"

namespace sdsn::ml {

double accuracy(const TrainedModel& model, const SampleMatrix& test) {
  if (test.rows() == 0) throw std::invalid_argument("accuracy: empty test set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.rows(); ++i)
    if (model.predict(test.row(i)) == test.labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(test.rows());
}

double accuracy(const TrainedModel& model, const monitor::Dataset& test) {
  return accuracy(model, SampleMatrix::from_dataset(test));
}

std::unique_ptr<DetectionClock> make_clock(TimingMode mode) {
  if (mode == TimingMode::wall) return std::make_unique<WallClock>();
  return std::make_unique<WorkClock>();
}

const char* to_string(TimingMode mode) { return mode == TimingMode::wall ? "wall" : "work"; }

std::optional<TimingMode> parse_timing(const std::string& s) {
  if (s == "wall") return TimingMode::wall;
  if (s == "work") return TimingMode::work;
  return std::nullopt;
}

Evaluation evaluate(const TrainedModel& model, const SampleMatrix& test, DetectionClock& clock,
                    std::size_t repeats) {
  if (test.rows() == 0) throw std::invalid_argument("evaluate: empty test set");
  if (repeats == 0) repeats = 1;
  Evaluation e;
  e.algorithm = model.algorithm;
  e.n_test = test.rows();
  double best = std::numeric_limits<double>::infinity();
  std::size_t correct = 0;
  for (std::size_t r = 0; r < repeats; ++r) {
    std::size_t c = 0;
    const double t0 = clock.now_s();
    for (std::size_t i = 0; i < test.rows(); ++i) {
      std::uint64_t ops = 0;
      if (model.predict(test.row(i), &ops) == test.labels[i]) ++c;
      clock.charge(ops);
    }
    best = std::min(best, clock.now_s() - t0);
    correct = c;
  }
  e.accuracy = static_cast<double>(correct) / static_cast<double>(test.rows());
  e.detection_time_s = std::max(best, kMinDetectionTime);
  return e;
}

Evaluation evaluate(const TrainedModel& model, const monitor::Dataset& test, DetectionClock& clock,
                    std::size_t repeats) {
  return evaluate(model, SampleMatrix::from_dataset(test), clock, repeats);
}

std::pair<monitor::Dataset, monitor::Dataset> stratified_split(const monitor::Dataset& d, double train_fraction,
                                                               std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("stratified_split: fraction must be in (0, 1)");
  monitor::Dataset train, test;
  train.provenance = d.provenance;
  test.provenance = d.provenance;
  for (monitor::Label label : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.samples.size(); ++i)
      if (d.samples[i].label == label) idx.push_back(i);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(label)));
    for (std::size_t i = idx.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(idx[i - 1], idx[j]);
    }
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    // keep at least one sample of each label on both sides when possible
    if (idx.size() >= 2) n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    for (std::size_t k = 0; k < idx.size(); ++k) (k < n_train ? train : test).samples.push_back(d.samples[idx[k]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace sdsn::ml

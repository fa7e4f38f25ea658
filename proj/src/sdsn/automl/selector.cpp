#include "sdsn/automl/selector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdsn::automl {

SelectionWeights SelectionWeights::uniform(WeightPair w) {
  SelectionWeights s;
  s.per_algorithm.fill(w);
  return s;
}

void SelectionWeights::validate() const {
  for (std::size_t i = 0; i < per_algorithm.size(); ++i) {
    const auto& w = per_algorithm[i];
    if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) || w.alpha < 0.0 || w.beta < 0.0)
      throw std::invalid_argument("weights for algorithm " + std::to_string(i + 1) + " must be finite and >= 0");
    if (w.alpha == 0.0 && w.beta == 0.0)
      throw std::invalid_argument("weights for algorithm " + std::to_string(i + 1) + " are both zero");
  }
}

std::vector<ModelScore> score_batch(const std::vector<ml::Evaluation>& evals, const SelectionWeights& weights) {
  if (evals.empty()) throw std::invalid_argument("score_batch: empty batch");
  bool seen[7] = {};
  double bmin = evals.front().detection_time_s, bmax = bmin;
  for (const auto& e : evals) {
    const int i = index_of(e.algorithm);
    if (seen[i]) throw std::invalid_argument(std::string("score_batch: duplicate algorithm ") + to_string(e.algorithm));
    seen[i] = true;
    bmin = std::min(bmin, e.detection_time_s);
    bmax = std::max(bmax, e.detection_time_s);
  }
  std::vector<ModelScore> out;
  out.reserve(evals.size());
  for (const auto& e : evals) {
    ModelScore s;
    s.algorithm = e.algorithm;
    s.accuracy = e.accuracy;
    s.detection_time_s = e.detection_time_s;
    s.speed_score = bmax > bmin ? (bmax - e.detection_time_s) / (bmax - bmin) : 1.0;
    const auto& w = weights.of(e.algorithm);
    s.total = w.alpha * s.accuracy + w.beta * s.speed_score;
    out.push_back(s);
  }
  return out;
}

ml::AlgorithmId select(const std::vector<ModelScore>& scores) {
  if (scores.empty()) throw std::invalid_argument("select: empty score list");
  const ModelScore* best = &scores.front();
  for (const auto& s : scores) {
    if (s.total > best->total || (s.total == best->total && index_of(s.algorithm) < index_of(best->algorithm)))
      best = &s;
  }
  return best->algorithm;
}

BufferSchedule BufferSchedule::make(double period_s) {
  if (!(period_s >= kMinPeriod && period_s <= kMaxPeriod))
    throw std::invalid_argument("buffer period must be within [60, 300] s");
  return BufferSchedule{period_s};
}

std::string to_string(const NetworkStateDescriptor& s) {
  return std::string(traffic::to_string(s.payload_class)) + "_" + traffic::to_string(s.speed_class);
}

namespace {

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

std::optional<NetworkStateDescriptor> describe_traffic(const std::vector<monitor::FlowVector>& vectors) {
  std::vector<double> sizes, rates;
  for (const auto& v : vectors) {
    if (v.features.pckt_rate <= 0.0) continue;
    sizes.push_back(v.features.mean_pckt_size);
    rates.push_back(v.features.pckt_rate);
  }
  if (sizes.empty()) return std::nullopt;
  NetworkStateDescriptor s;
  s.payload_class = traffic::classify_payload(median(sizes));
  s.speed_class = traffic::classify_speed(median(rates));
  return s;
}

std::optional<CycleResult> reselect_cycle(const monitor::Dataset& window, const SelectionWeights& weights,
                                          const SelectorParams& params) {
  if (!window.has_both_labels()) return std::nullopt;
  auto [train_set, test_set] = ml::stratified_split(window, params.train_fraction, params.seed);
  const auto train_m = ml::SampleMatrix::from_dataset(train_set);
  const auto test_m = ml::SampleMatrix::from_dataset(test_set);
  CycleResult r;
  std::vector<std::shared_ptr<const ml::TrainedModel>> models;
  for (auto id : ml::kAllAlgorithms) {
    auto m = std::make_shared<ml::TrainedModel>(ml::train(id, train_m, params.hyperparameters, params.seed));
    m->trained_on = window.provenance;
    auto clock = ml::make_clock(params.timing);
    r.evaluations.push_back(ml::evaluate(*m, test_m, *clock, params.timing_repeats));
    models.push_back(std::move(m));
  }
  r.scores = score_batch(r.evaluations, weights);
  r.winner = select(r.scores);
  r.model = models[static_cast<std::size_t>(index_of(r.winner) - 1)];
  return r;
}

const SelectionWeights& CalibratedWeights::for_state(const std::optional<NetworkStateDescriptor>& s) const {
  if (s) {
    auto it = per_state.find(*s);
    if (it != per_state.end()) return it->second;
  }
  return global;
}

CalibratedWeights calibrate_weights(const std::vector<HistoryEntry>& history, const CalibrationParams& params) {
  if (history.empty()) throw std::invalid_argument("calibrate_weights: empty history");
  CalibratedWeights out;
  out.global = SelectionWeights::uniform(params.global);
  if (!params.per_state) return out;

  std::map<NetworkStateDescriptor, std::vector<const HistoryEntry*>> by_state;
  for (const auto& h : history) by_state[h.state].push_back(&h);

  for (const auto& [state, entries] : by_state) {
    std::optional<WeightPair> best;
    double best_acc = 0.0, best_time = 0.0;
    for (double a : params.grid) {
      for (double b : params.grid) {
        const WeightPair w{a, b};
        const auto sw = SelectionWeights::uniform(w);
        double acc = 0.0, time = 0.0;
        for (const auto* e : entries) {
          const auto scores = score_batch(e->batch, sw);
          const auto win = select(scores);
          for (const auto& s : scores)
            if (s.algorithm == win) {
              acc += s.accuracy;
              time += s.detection_time_s;
            }
        }
        const double n = static_cast<double>(entries.size());
        acc /= n;
        time /= n;
        // grid is scanned in ascending (alpha, beta), so strict comparisons
        // keep the lowest pair among equals
        if (!best || acc > best_acc || (acc == best_acc && time < best_time)) {
          best = w;
          best_acc = acc;
          best_time = time;
        }
      }
    }
    out.per_state[state] = SelectionWeights::uniform(*best);
  }
  return out;
}

}  // namespace sdsn::automl

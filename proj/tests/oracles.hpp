#pragma once

// Reference computations written independently of the library, used as
// test oracles.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace oracle {

/// Correct predictions over n, by direct counting.
inline double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == 1 && truth[i] == 1) ++tp;
    else if (predicted[i] == 0 && truth[i] == 0) ++tn;
    else if (predicted[i] == 1) ++fp;
    else ++fn;
  }
  return static_cast<double>(tp + tn) / static_cast<double>(tp + tn + fp + fn);
}

struct Candidate {
  int index;  // 1..6
  double accuracy;
  double time;
  double alpha;
  double beta;
};

/// Min-max normalized speed, brute force.
inline std::vector<double> speed_scores(const std::vector<Candidate>& c) {
  double lo = c[0].time, hi = c[0].time;
  for (const auto& x : c) {
    if (x.time < lo) lo = x.time;
    if (x.time > hi) hi = x.time;
  }
  std::vector<double> s;
  for (const auto& x : c) s.push_back(hi == lo ? 1.0 : (hi - x.time) / (hi - lo));
  return s;
}

/// Winner by pairwise comparison: the candidate that beats or ties-with-
/// smaller-index every other one.
inline int argmax(const std::vector<double>& totals, const std::vector<int>& index) {
  for (std::size_t i = 0; i < totals.size(); ++i) {
    bool wins = true;
    for (std::size_t j = 0; j < totals.size() && wins; ++j) {
      if (i == j) continue;
      if (totals[j] > totals[i] || (totals[j] == totals[i] && index[j] < index[i])) wins = false;
    }
    if (wins) return index[i];
  }
  return -1;
}

/// Single-server FIFO with capacity `cap` packets (including the one in
/// service), fixed service time, tail drop. Returns departure times in ns
/// (nullopt for drops) for arrivals given in ns, non-decreasing.
inline std::vector<std::optional<double>> fifo(const std::vector<double>& arrivals, double service_ns,
                                               std::size_t cap) {
  std::vector<std::optional<double>> out;
  std::deque<double> in_system;  // departure times of accepted packets
  double last_departure = 0.0;
  for (double a : arrivals) {
    while (!in_system.empty() && in_system.front() <= a) in_system.pop_front();
    if (in_system.size() >= cap) {
      out.push_back(std::nullopt);
      continue;
    }
    const double start = a > last_departure ? a : last_departure;
    last_departure = start + service_ns;
    in_system.push_back(last_departure);
    out.push_back(last_departure);
  }
  return out;
}

}  // namespace oracle

#include <algorithm>
#include <cmath>

#include "sdsn/ml/models.hpp"

namespace sdsn::ml {

NaiveBayes::NaiveBayes(const SampleMatrix& data, const NaiveBayesParams& params) : dims_(data.dims) {
  double count[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    mean_[c].assign(dims_, 0.0);
    var_[c].assign(dims_, 0.0);
  }
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int c = data.labels[i];
    count[c] += 1.0;
    for (std::size_t j = 0; j < dims_; ++j) mean_[c][j] += data.row(i)[j];
  }
  for (int c = 0; c < 2; ++c)
    for (auto& m : mean_[c]) m /= count[c];
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int c = data.labels[i];
    for (std::size_t j = 0; j < dims_; ++j) {
      const double d = data.row(i)[j] - mean_[c][j];
      var_[c][j] += d * d;
    }
  }
  const double n = count[0] + count[1];
  for (int c = 0; c < 2; ++c) {
    for (auto& v : var_[c]) v = std::max(v / count[c], params.variance_floor);
    log_prior_[c] = std::log(count[c] / n);
  }
}

Label NaiveBayes::predict(std::span<const double> x, std::uint64_t* ops) const {
  double score[2];
  for (int c = 0; c < 2; ++c) {
    double s = log_prior_[c];
    for (std::size_t j = 0; j < dims_; ++j) {
      const double d = x[j] - mean_[c][j];
      s -= 0.5 * std::log(var_[c][j]) + d * d / (2.0 * var_[c][j]);
    }
    score[c] = s;
  }
  if (ops) *ops += 2 * dims_;
  return score[1] > score[0] ? 1 : 0;
}

}  // namespace sdsn::ml

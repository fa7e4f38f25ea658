#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sdsn/ml/models.hpp"

namespace sdsn::ml {

Knn::Knn(const SampleMatrix& data, const KnnParams& params) : scaler_(data), train_(scaler_.apply(data)), k_(params.k) {
  if (k_ == 0) throw std::invalid_argument("knn: k must be >= 1");
  k_ = std::min(k_, train_.rows());
}

Label Knn::predict(std::span<const double> x, std::uint64_t* ops) const {
  std::vector<double> z(train_.dims);
  scaler_.apply(x, z);
  std::vector<std::pair<double, std::size_t>> dist(train_.rows());
  for (std::size_t i = 0; i < train_.rows(); ++i) {
    const auto r = train_.row(i);
    double d = 0.0;
    for (std::size_t j = 0; j < train_.dims; ++j) {
      const double diff = r[j] - z[j];
      d += diff * diff;
    }
    dist[i] = {d, i};
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
  std::size_t ones = 0;
  for (std::size_t i = 0; i < k_; ++i) ones += train_.labels[dist[i].second] == 1 ? 1 : 0;
  if (ops) *ops += train_.rows() * train_.dims + k_;
  return 2 * ones > k_ ? 1 : 0;
}

}  // namespace sdsn::ml

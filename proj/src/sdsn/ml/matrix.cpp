#include "sdsn/ml/matrix.hpp"

#include <cmath>

namespace sdsn::ml {

SampleMatrix SampleMatrix::from_dataset(const monitor::Dataset& d) {
  SampleMatrix m;
  m.dims = monitor::kFeatureCount;
  m.values.reserve(d.size() * m.dims);
  m.labels.reserve(d.size());
  for (const auto& s : d.samples) {
    auto a = s.features.to_array();
    m.values.insert(m.values.end(), a.begin(), a.end());
    m.labels.push_back(s.label);
  }
  return m;
}

void SampleMatrix::push_back(std::span<const double> x, Label y) {
  values.insert(values.end(), x.begin(), x.end());
  labels.push_back(y);
}

Standardizer::Standardizer(const SampleMatrix& m) : mean_(m.dims, 0.0), scale_(m.dims, 1.0) {
  const auto n = static_cast<double>(m.rows());
  if (m.rows() == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.dims; ++j) mean_[j] += m.row(i)[j];
  for (auto& v : mean_) v /= n;
  std::vector<double> var(m.dims, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.dims; ++j) {
      const double d = m.row(i)[j] - mean_[j];
      var[j] += d * d;
    }
  for (std::size_t j = 0; j < m.dims; ++j) {
    const double sd = std::sqrt(var[j] / n);
    scale_[j] = sd > 0.0 ? sd : 1.0;
  }
}

void Standardizer::apply(std::span<const double> in, std::span<double> out) const {
  for (std::size_t j = 0; j < mean_.size(); ++j) out[j] = (in[j] - mean_[j]) / scale_[j];
}

SampleMatrix Standardizer::apply(const SampleMatrix& m) const {
  SampleMatrix out;
  out.dims = m.dims;
  out.labels = m.labels;
  out.values.resize(m.values.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    apply(m.row(i), std::span<double>(out.values.data() + i * m.dims, m.dims));
  return out;
}

}  // namespace sdsn::ml

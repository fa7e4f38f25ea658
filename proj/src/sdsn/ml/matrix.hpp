#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdsn/monitor/dataset.hpp"

namespace sdsn::ml {

using monitor::Label;

/// Row-major feature matrix with labels.
struct SampleMatrix {
  std::size_t dims = 0;
  std::vector<double> values;
  std::vector<Label> labels;

  std::size_t rows() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * dims, dims}; }

  static SampleMatrix from_dataset(const monitor::Dataset& d);
  void push_back(std::span<const double> x, Label y);
};

/// Per-feature z-scoring fitted on training data; zero-variance features
/// keep unit scale.
class Standardizer {
public:
  Standardizer() = default;
  explicit Standardizer(const SampleMatrix& m);

  void apply(std::span<const double> in, std::span<double> out) const;
  SampleMatrix apply(const SampleMatrix& m) const;
  std::size_t dims() const { return mean_.size(); }

private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace sdsn::ml

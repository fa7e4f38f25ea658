#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>

#include "sdsn/ml/algorithm.hpp"
#include "sdsn/ml/matrix.hpp"

namespace sdsn::ml {

/// A trained binary classifier. predict() is const and pure; `ops`, when
/// given, accumulates the model's count of elementary operations.
class Classifier {
public:
  virtual ~Classifier() = default;
  virtual Label predict(std::span<const double> x, std::uint64_t* ops) const = 0;
  virtual std::size_t arity() const = 0;
};

/// Immutable after training; safe to share for concurrent predict().
struct TrainedModel {
  AlgorithmId algorithm = AlgorithmId::decision_tree;
  std::shared_ptr<const Classifier> impl;
  Hyperparameters hyperparameters;
  std::optional<monitor::DatasetProvenance> trained_on;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on arity mismatch.
  Label predict(std::span<const double> x, std::uint64_t* ops = nullptr) const;
  Label predict(const monitor::FeatureVector& f, std::uint64_t* ops = nullptr) const;
};

/// Throws std::invalid_argument for single-label or non-finite input.
TrainedModel train(AlgorithmId algorithm, const SampleMatrix& data, const Hyperparameters& hp, std::uint64_t seed);
TrainedModel train(AlgorithmId algorithm, const monitor::Dataset& data, const Hyperparameters& hp,
                   std::uint64_t seed);

}  // namespace sdsn::ml

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdsn/core/rng.hpp"
#include "sdsn/ml/classifier.hpp"

namespace sdsn::ml {

/// CART with Gini impurity. Splits test x[feature] <= threshold; among
/// equally good splits the lowest feature index (then lowest threshold) wins.
class DecisionTree final : public Classifier {
public:
  /// `rows` selects (with repetition, for bootstrap) the training rows.
  /// `rng` is used only when params.max_features restricts the candidates.
  DecisionTree(const SampleMatrix& data, std::span<const std::size_t> rows, const TreeParams& params, Rng* rng);
  DecisionTree(const SampleMatrix& data, const TreeParams& params);

  Label predict(std::span<const double> x, std::uint64_t* ops) const override;
  std::size_t arity() const override { return dims_; }
  std::size_t node_count() const { return nodes_.size(); }
  int depth() const;

private:
  struct Node {
    int feature = -1;  // -1: leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    Label label = 0;
  };
  std::int32_t build(const SampleMatrix& data, std::vector<std::size_t>& rows, int depth, const TreeParams& params,
                     Rng* rng);

  std::size_t dims_;
  std::vector<Node> nodes_;
};

/// Bagged trees with sqrt(d) features per split; majority vote, ties to 0.
class RandomForest final : public Classifier {
public:
  RandomForest(const SampleMatrix& data, const ForestParams& params, std::uint64_t seed);

  Label predict(std::span<const double> x, std::uint64_t* ops) const override;
  std::size_t arity() const override { return dims_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

private:
  std::size_t dims_;
  std::vector<DecisionTree> trees_;
};

/// Brute-force k nearest neighbours, Euclidean on standardized features.
/// Equal distances resolve to the earlier training row; an even vote is 0.
class Knn final : public Classifier {
public:
  Knn(const SampleMatrix& data, const KnnParams& params);

  Label predict(std::span<const double> x, std::uint64_t* ops) const override;
  std::size_t arity() const override { return scaler_.dims(); }

private:
  Standardizer scaler_;
  SampleMatrix train_;
  std::size_t k_;
};

/// Gaussian naive Bayes on raw features.
class NaiveBayes final : public Classifier {
public:
  NaiveBayes(const SampleMatrix& data, const NaiveBayesParams& params);

  Label predict(std::span<const double> x, std::uint64_t* ops) const override;
  std::size_t arity() const override { return dims_; }

private:
  std::size_t dims_;
  double log_prior_[2];
  std::vector<double> mean_[2];
  std::vector<double> var_[2];
};

/// Linear decision function w.x + b on standardized features; positive
/// margin predicts 1. Shared by logistic regression and the linear SVM.
class LinearModel final : public Classifier {
public:
  static LinearModel logistic(const SampleMatrix& data, const LogisticParams& params);
  static LinearModel svm(const SampleMatrix& data, const SvmParams& params);

  Label predict(std::span<const double> x, std::uint64_t* ops) const override;
  std::size_t arity() const override { return weights_.size(); }
  double decision(std::span<const double> x) const;

private:
  LinearModel(Standardizer scaler, std::vector<double> w, double b)
      : scaler_(std::move(scaler)), weights_(std::move(w)), bias_(b) {}

  Standardizer scaler_;
  std::vector<double> weights_;
  double bias_;
};

}  // namespace sdsn::ml

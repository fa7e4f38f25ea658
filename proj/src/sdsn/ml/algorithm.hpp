#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace sdsn::ml {

/// The six candidate detectors. The enumerator value is the index i in
/// 1..6 used by selection tie-breaking.
enum class AlgorithmId {
  decision_tree = 1,
  random_forest = 2,
  knn = 3,
  naive_bayes = 4,
  logistic_regression = 5,
  linear_svm = 6,
};

inline constexpr std::array<AlgorithmId, 6> kAllAlgorithms = {
    AlgorithmId::decision_tree, AlgorithmId::random_forest,       AlgorithmId::knn,
    AlgorithmId::naive_bayes,   AlgorithmId::logistic_regression, AlgorithmId::linear_svm,
};

constexpr int index_of(AlgorithmId id) { return static_cast<int>(id); }
const char* to_string(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm(const std::string& name);

struct TreeParams {
  int max_depth = 10;
  std::size_t min_split = 2;
  std::size_t max_features = 0;  // 0: consider every feature
};

struct ForestParams {
  std::size_t trees = 50;
  int max_depth = 10;
  std::size_t min_split = 2;
  bool bootstrap = true;
  /// Every tree uses the first tree's seed; the forest then votes with
  /// identical members.
  bool identical_trees = false;
};

struct KnnParams {
  std::size_t k = 5;
};

struct NaiveBayesParams {
  double variance_floor = 1e-9;
};

struct LogisticParams {
  std::size_t epochs = 500;
  double step = 0.1;
};

struct SvmParams {
  double lambda = 1e-3;
  std::size_t epochs = 500;
  double step = 0.1;
};

struct Hyperparameters {
  TreeParams decision_tree;
  ForestParams random_forest;
  KnnParams knn;
  NaiveBayesParams naive_bayes;
  LogisticParams logistic_regression;
  SvmParams linear_svm;
};

}  // namespace sdsn::ml

#include "sdsn/ml/algorithm.hpp"

namespace sdsn::ml {

const char* to_string(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::decision_tree: return "decision_tree";
    case AlgorithmId::random_forest: return "random_forest";
    case AlgorithmId::knn: return "knn";
    case AlgorithmId::naive_bayes: return "naive_bayes";
    case AlgorithmId::logistic_regression: return "logistic_regression";
    case AlgorithmId::linear_svm: return "linear_svm";
  }
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(const std::string& name) {
  for (auto id : kAllAlgorithms)
    if (name == to_string(id)) return id;
  return std::nullopt;
}

}  // namespace sdsn::ml

#include "sdsn/ml/classifier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdsn/ml/models.hpp"

namespace sdsn::ml {

Label TrainedModel::predict(std::span<const double> x, std::uint64_t* ops) const {
  if (x.size() != impl->arity())
    throw std::invalid_argument("predict: expected " + std::to_string(impl->arity()) + " features, got " +
                                std::to_string(x.size()));
  return impl->predict(x, ops);
}

Label TrainedModel::predict(const monitor::FeatureVector& f, std::uint64_t* ops) const {
  const auto a = f.to_array();
  return predict(std::span<const double>(a), ops);
}

TrainedModel train(AlgorithmId algorithm, const SampleMatrix& data, const Hyperparameters& hp, std::uint64_t seed) {
  bool seen[2] = {false, false};
  for (auto l : data.labels) {
    if (l != 0 && l != 1) throw std::invalid_argument("train: labels must be 0 or 1");
    seen[l] = true;
  }
  if (!seen[0] || !seen[1]) throw std::invalid_argument("train: training set must contain both labels");
  for (double v : data.values)
    if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite feature value");

  TrainedModel m;
  m.algorithm = algorithm;
  m.hyperparameters = hp;
  m.seed = seed;
  switch (algorithm) {
    case AlgorithmId::decision_tree: m.impl = std::make_shared<DecisionTree>(data, hp.decision_tree); break;
    case AlgorithmId::random_forest: m.impl = std::make_shared<RandomForest>(data, hp.random_forest, seed); break;
    case AlgorithmId::knn: m.impl = std::make_shared<Knn>(data, hp.knn); break;
    case AlgorithmId::naive_bayes: m.impl = std::make_shared<NaiveBayes>(data, hp.naive_bayes); break;
    case AlgorithmId::logistic_regression:
      m.impl = std::make_shared<LinearModel>(LinearModel::logistic(data, hp.logistic_regression));
      break;
    case AlgorithmId::linear_svm:
      m.impl = std::make_shared<LinearModel>(LinearModel::svm(data, hp.linear_svm));
      break;
  }
  return m;
}

TrainedModel train(AlgorithmId algorithm, const monitor::Dataset& data, const Hyperparameters& hp,
                   std::uint64_t seed) {
  auto m = train(algorithm, SampleMatrix::from_dataset(data), hp, seed);
  m.trained_on = data.provenance;
  return m;
}

}  // namespace sdsn::ml

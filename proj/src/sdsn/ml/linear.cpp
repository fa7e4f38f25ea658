#include <cmath>

#include "sdsn/ml/models.hpp"

namespace sdsn::ml {

namespace {

double dot(std::span<const double> w, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
  return s;
}

}  // namespace

LinearModel LinearModel::logistic(const SampleMatrix& data, const LogisticParams& params) {
  Standardizer scaler(data);
  const SampleMatrix z = scaler.apply(data);
  const std::size_t d = z.dims;
  const double n = static_cast<double>(z.rows());
  std::vector<double> w(d, 0.0), grad(d);
  double b = 0.0;
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      const auto x = z.row(i);
      const double p = 1.0 / (1.0 + std::exp(-(dot(w, x) + b)));
      const double err = p - static_cast<double>(z.labels[i]);
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * x[j];
      grad_b += err;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= params.step * grad[j] / n;
    b -= params.step * grad_b / n;
  }
  return LinearModel(std::move(scaler), std::move(w), b);
}

LinearModel LinearModel::svm(const SampleMatrix& data, const SvmParams& params) {
  Standardizer scaler(data);
  const SampleMatrix z = scaler.apply(data);
  const std::size_t d = z.dims;
  const double n = static_cast<double>(z.rows());
  std::vector<double> w(d, 0.0), grad(d);
  double b = 0.0;
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t j = 0; j < d; ++j) grad[j] = params.lambda * w[j];
    double grad_b = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      const auto x = z.row(i);
      const double y = z.labels[i] == 1 ? 1.0 : -1.0;
      if (y * (dot(w, x) + b) < 1.0) {
        for (std::size_t j = 0; j < d; ++j) grad[j] -= y * x[j] / n;
        grad_b -= y / n;
      }
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= params.step * grad[j];
    b -= params.step * grad_b;
  }
  return LinearModel(std::move(scaler), std::move(w), b);
}

double LinearModel::decision(std::span<const double> x) const {
  std::vector<double> z(weights_.size());
  scaler_.apply(x, z);
  return dot(weights_, z) + bias_;
}

Label LinearModel::predict(std::span<const double> x, std::uint64_t* ops) const {
  if (ops) *ops += 2 * weights_.size();
  return decision(x) > 0.0 ? 1 : 0;
}

}  // namespace sdsn::ml

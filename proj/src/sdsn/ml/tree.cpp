#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdsn/ml/models.hpp"

namespace sdsn::ml {

namespace {

double gini(double n0, double n1) {
  const double n = n0 + n1;
  if (n <= 0.0) return 0.0;
  const double p0 = n0 / n;
  const double p1 = n1 / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

Label majority(double n0, double n1) { return n1 > n0 ? 1 : 0; }

}  // namespace

DecisionTree::DecisionTree(const SampleMatrix& data, std::span<const std::size_t> rows, const TreeParams& params,
                           Rng* rng)
    : dims_(data.dims) {
  std::vector<std::size_t> r(rows.begin(), rows.end());
  build(data, r, 0, params, rng);
}

DecisionTree::DecisionTree(const SampleMatrix& data, const TreeParams& params) : dims_(data.dims) {
  std::vector<std::size_t> r(data.rows());
  std::iota(r.begin(), r.end(), std::size_t{0});
  build(data, r, 0, params, nullptr);
}

std::int32_t DecisionTree::build(const SampleMatrix& data, std::vector<std::size_t>& rows, int depth,
                                 const TreeParams& params, Rng* rng) {
  const auto self = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();

  double n1 = 0.0;
  for (auto r : rows) n1 += data.labels[r] == 1 ? 1.0 : 0.0;
  const double n = static_cast<double>(rows.size());
  const double n0 = n - n1;
  nodes_[self].label = majority(n0, n1);
  if (depth >= params.max_depth || rows.size() < params.min_split || n0 == 0.0 || n1 == 0.0) return self;

  std::vector<std::size_t> features(dims_);
  std::iota(features.begin(), features.end(), std::size_t{0});
  if (params.max_features > 0 && params.max_features < dims_ && rng) {
    for (std::size_t i = 0; i < params.max_features; ++i)
      std::swap(features[i], features[static_cast<std::size_t>(
                                 rng->uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(dims_) - 1))]);
    features.resize(params.max_features);
    std::sort(features.begin(), features.end());
  }

  const double parent = gini(n0, n1);
  double best = parent - 1e-12;
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<std::pair<double, Label>> column(rows.size());
  for (auto f : features) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = {data.row(rows[i])[f], data.labels[rows[i]]};
    std::sort(column.begin(), column.end());
    double l0 = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      (column[i].second == 1 ? l1 : l0) += 1.0;
      if (column[i].first == column[i + 1].first) continue;
      const double nl = l0 + l1;
      const double nr = n - nl;
      const double impurity = (nl * gini(l0, l1) + nr * gini(n0 - l0, n1 - l1)) / n;
      if (impurity < best) {
        best = impurity;
        best_feature = static_cast<int>(f);
        best_threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
      }
    }
  }
  if (best_feature < 0) return self;

  std::vector<std::size_t> left, right;
  for (auto r : rows) (data.row(r)[best_feature] <= best_threshold ? left : right).push_back(r);
  rows.clear();
  rows.shrink_to_fit();

  nodes_[self].feature = best_feature;
  nodes_[self].threshold = best_threshold;
  const auto l = build(data, left, depth + 1, params, rng);
  const auto r = build(data, right, depth + 1, params, rng);
  nodes_[self].left = l;
  nodes_[self].right = r;
  return self;
}

Label DecisionTree::predict(std::span<const double> x, std::uint64_t* ops) const {
  std::int32_t i = 0;
  std::uint64_t visited = 1;
  while (nodes_[i].feature >= 0) {
    i = x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    ++visited;
  }
  if (ops) *ops += visited;
  return nodes_[i].label;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes_[i].feature >= 0) {
      d[nodes_[i].left] = d[i] + 1;
      d[nodes_[i].right] = d[i] + 1;
    }
  }
  return best;
}

RandomForest::RandomForest(const SampleMatrix& data, const ForestParams& params, std::uint64_t seed)
    : dims_(data.dims) {
  TreeParams tp;
  tp.max_depth = params.max_depth;
  tp.min_split = params.min_split;
  tp.max_features = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dims_)))));
  const std::size_t n = data.rows();
  std::vector<std::size_t> rows(n);
  trees_.reserve(params.trees);
  for (std::size_t t = 0; t < params.trees; ++t) {
    Rng rng(mix_seed(seed, params.identical_trees ? 0 : t));
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    trees_.emplace_back(data, rows, tp, &rng);
  }
}

Label RandomForest::predict(std::span<const double> x, std::uint64_t* ops) const {
  std::size_t votes = 0;
  for (const auto& t : trees_) votes += t.predict(x, ops) == 1 ? 1 : 0;
  return 2 * votes > trees_.size() ? 1 : 0;
}

}  // namespace sdsn::ml

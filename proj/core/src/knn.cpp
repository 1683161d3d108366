#include "mforge/knn.hpp"

#include <algorithm>
#include <cmath>

#include "mforge/multiplex.hpp"
#include "mforge/parallel.hpp"

namespace mforge {

namespace {

double source_distance(const BrainNetwork& a, const BrainNetwork& b) {
  const std::size_t n = a.n;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = a.weights(i, j) - b.weights(i, j);
      acc += d * d;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

BrainNetwork knn_predict(const std::vector<KnnPair>& train, const BrainNetwork& test_source,
                         std::size_t k) {
  if (train.empty()) throw EmptyDataset("knn_predict: empty training set");
  if (k < 1 || k > train.size()) throw KTooLarge("knn_predict: K outside [1, |train|]");
  const std::size_t n = test_source.n;
  for (const KnnPair& p : train) {
    if (p.source.n != n || p.target.n != n) {
      throw ShapeMismatch("knn_predict: inconsistent network sizes");
    }
  }

  std::vector<std::pair<double, std::size_t>> ranked(train.size());
  for (std::size_t t = 0; t < train.size(); ++t) {
    ranked[t] = {source_distance(train[t].source, test_source), t};
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  Tensor mean({n, n}, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    mean += train[ranked[r].second].target.weights;
  }
  mean *= 1.0 / static_cast<double>(k);
  return BrainNetwork(std::move(mean), test_source.view_label + ":knn");
}

double knn_mae(const std::vector<KnnPair>& train, const std::vector<KnnPair>& test,
               std::size_t k) {
  if (test.empty()) throw EmptyDataset("knn_mae: empty test set");
  std::vector<double> errors(test.size(), 0.0);
  parallel_for(test.size(), [&](std::size_t s) {
    BrainNetwork pred = knn_predict(train, test[s].source, k);
    errors[s] = mae(pred, test[s].target);
  });
  double acc = 0.0;
  for (double e : errors) acc += e;
  return acc / static_cast<double>(test.size());
}

double knn_average_mae(const std::vector<KnnPair>& train, const std::vector<KnnPair>& test,
                       const KnnConfig& cfg) {
  if (cfg.k_values.empty()) throw ConfigError("knn_average_mae: no K values");
  double acc = 0.0;
  for (std::size_t k : cfg.k_values) acc += knn_mae(train, test, k);
  return acc / static_cast<double>(cfg.k_values.size());
}

}  // namespace mforge

#pragma once

#include <cstddef>
#include <vector>

#include "mforge/brain_network.hpp"

namespace mforge {

struct KnnConfig {
  /// Neighborhood sizes to sweep; the headline number averages over these.
  std::vector<std::size_t> k_values = {2, 3, 4, 5, 6, 7, 8, 9, 10};
};

struct KnnPair {
  BrainNetwork source;
  BrainNetwork target;
};

/// Predicts a target network as the entrywise mean of the targets of the K
/// training subjects whose sources are closest in Euclidean distance over
/// vectorized strict upper triangles. Ties break by ascending training index.
BrainNetwork knn_predict(const std::vector<KnnPair>& train, const BrainNetwork& test_source,
                         std::size_t k);

/// Mean over k_values of the mean test-set MAE at each K.
double knn_average_mae(const std::vector<KnnPair>& train, const std::vector<KnnPair>& test,
                       const KnnConfig& cfg);

/// Mean test-set MAE for a single K.
double knn_mae(const std::vector<KnnPair>& train, const std::vector<KnnPair>& test,
               std::size_t k);

}  // namespace mforge

#pragma once

#include <cstddef>

#include "mforge/tensor.hpp"

namespace mforge {

/// Per-edge feature stack: one n-by-n map per channel, stored channel-major
/// so the row/column scans inside the graph layers stay contiguous.
struct EdgeFeatureMap {
  std::size_t n = 0;
  std::size_t channels = 0;
  Tensor values;  // shape {channels, n, n}

  EdgeFeatureMap() = default;
  EdgeFeatureMap(std::size_t n_, std::size_t channels_)
      : n(n_), channels(channels_), values({channels_, n_, n_}) {}

  /// Wraps a single n-by-n matrix as a 1-channel map.
  static EdgeFeatureMap from_matrix(const Tensor& m) {
    require_square(m, "EdgeFeatureMap");
    EdgeFeatureMap x(m.dim(0), 1);
    x.values.values() = m.values();
    return x;
  }

  double& at(std::size_t c, std::size_t i, std::size_t j) noexcept { return values(c, i, j); }
  double at(std::size_t c, std::size_t i, std::size_t j) const noexcept { return values(c, i, j); }

  bool empty() const noexcept { return n == 0; }

  /// Mean over channels, as an n-by-n matrix.
  Tensor channel_mean() const;
};

/// Per-node feature matrix, n rows by `channels` columns.
struct NodeFeatureMap {
  std::size_t n = 0;
  std::size_t channels = 0;
  Tensor values;  // shape {n, channels}

  NodeFeatureMap() = default;
  NodeFeatureMap(std::size_t n_, std::size_t channels_)
      : n(n_), channels(channels_), values({n_, channels_}) {}

  double& at(std::size_t i, std::size_t c) noexcept { return values(i, c); }
  double at(std::size_t i, std::size_t c) const noexcept { return values(i, c); }

  bool empty() const noexcept { return n == 0; }
};

/// Stacks the channels of two edge maps, a's channels first.
EdgeFeatureMap channel_concat(const EdgeFeatureMap& a, const EdgeFeatureMap& b);

/// Splits gradient of a concatenated map back into the two halves.
void channel_split(const EdgeFeatureMap& joint, EdgeFeatureMap& a, EdgeFeatureMap& b,
                   std::size_t a_channels);

NodeFeatureMap channel_concat(const NodeFeatureMap& a, const NodeFeatureMap& b);
void channel_split(const NodeFeatureMap& joint, NodeFeatureMap& a, NodeFeatureMap& b,
                   std::size_t a_channels);

/// (m + m^T) / 2 for a square matrix.
Tensor symmetrized(const Tensor& m);

/// Sets the main diagonal of a square matrix to zero.
void zero_diagonal(Tensor& m);

}  // namespace mforge

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mforge/brain_network.hpp"

namespace mforge {

/// 2-D "same"-size convolution of the two intra-layers with 1-based index
/// semantics: out(a,b) = sum_{p,q} S(p,q) * T(a-p+1, b-q+1), where T reads as
/// zero outside [1,n]^2. When `normalize` is set (the default for multiplex
/// assembly), the result is min-max rescaled to [0,1]; a constant map
/// rescales to all zeros.
Tensor inter_layer_conv(const Tensor& source, const Tensor& target, bool normalize = true);

/// Min-max rescale of an arbitrary matrix to [0,1] (all zeros if constant).
Tensor min_max_normalized(const Tensor& m);

enum class InterKind : std::uint8_t { kConv, kLearnedPreRelu, kLearnedPostRelu };

std::string to_string(InterKind k);

/// Ordered triple of layers: source intra-layer, inter-layer, target
/// intra-layer.
struct Multiplex {
  BrainNetwork source;
  Tensor inter;  // {n, n}
  BrainNetwork target;
  InterKind inter_kind = InterKind::kConv;
};

/// Assembles a multiplex. The conv kind convolves the two intra-layers; the
/// learned kinds copy the translator's encoder tap (min-max normalized) and
/// require `tap`.
Multiplex build_multiplex(const BrainNetwork& source, const BrainNetwork& target,
                          InterKind kind, const std::optional<Tensor>& tap = std::nullopt,
                          bool normalize_inter = true);

/// Flattened strict-upper-triangle features, layer-major then row-major
/// (i < j). A single network yields n(n-1)/2 values; a multiplex 3x that.
struct FeatureVector {
  std::vector<double> values;
  std::size_t n = 0;
  std::size_t layers = 1;  // 1 for a single network, 3 for a multiplex
};

/// Maps a feature position back to (layer, i, j) with i < j.
struct FeatureIndex {
  std::size_t layer = 0;  // 0 source, 1 inter, 2 target
  std::size_t i = 0;
  std::size_t j = 0;
};

std::size_t feature_count(std::size_t n, std::size_t layers);
FeatureIndex feature_index(std::size_t position, std::size_t n, std::size_t layers);
std::size_t feature_position(const FeatureIndex& idx, std::size_t n);

FeatureVector vectorize(const BrainNetwork& net);
FeatureVector vectorize(const Multiplex& m);

/// Inverse of vectorize: rebuilds symmetric zero-diagonal layers. Any
/// diagonal content the inter-layer had before vectorization is not a
/// feature and comes back as zero.
BrainNetwork devectorize_network(const FeatureVector& v);
Multiplex devectorize_multiplex(const FeatureVector& v);

/// Mean absolute error over strict-upper-triangle entries.
double mae(const BrainNetwork& predicted, const BrainNetwork& truth);
double mae(const Tensor& predicted, const Tensor& truth);

}  // namespace mforge
